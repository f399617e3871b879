// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "pinfo/divergences.hpp"
#include "test_support.hpp"

using namespace pinfo;

namespace {

IntensityOperator scalar_op(double n) {
  Matrix m(1, 1);
  m(0, 0) = n;
  return IntensityOperator::from_matrix(m);
}

IntensityOperator diag_op(std::initializer_list<double> diag) {
  const int d = static_cast<int>(diag.size());
  Matrix m = Matrix::Zero(d, d);
  int i = 0;
  for (double v : diag) m(i, i) = v, ++i;
  return IntensityOperator::from_matrix(m);
}

IntensityVector vec(std::initializer_list<double> vals) {
  RealVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return IntensityVector(std::move(v));
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("scalar pair 1 vs 4 hits every closed form") {
  const IntensityOperator a = scalar_op(1.0);
  const IntensityOperator b = scalar_op(4.0);
  CHECK(std::abs(fidelity(a, b) - 2.0) <= 1e-12);
  CHECK(std::abs(bures_sq(a, b) - 1.0) <= 1e-12);
  CHECK(std::abs(poisson_state_fidelity(a, b) - std::exp(-0.5)) <= 1e-12);
  CHECK(std::abs(chernoff_quantity(a, b, 0.5) - 2.0) <= 1e-12);
  CHECK(std::abs(alpha_divergence(a, b, 0.5) - 2.0) <= 1e-12);
  CHECK(std::abs(relative_entropy(a, b) - (3.0 - std::log(4.0))) <= 1e-12);

  // Oracle: maximize 4 - 3s - 4^(1-s); stationary point 4^(1-s) ln4 = 3.
  const DivergenceReport rep = chernoff_distance(a, b);
  CHECK(std::abs(rep.value - 0.506550749165636) <= 1e-9);
  REQUIRE(rep.s_star.has_value());
  CHECK(std::abs(*rep.s_star - 0.443135563166973) <= 1e-6);
}

TEST_CASE("identical operators give the degenerate values") {
  const IntensityOperator g = diag_op({1.0, 2.0});
  CHECK(std::abs(fidelity(g, g) - 3.0) <= 1e-12);
  CHECK(std::abs(bures_sq(g, g)) <= 1e-12);
  CHECK(std::abs(poisson_state_fidelity(g, g) - 1.0) <= 1e-12);
  for (double s : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(std::abs(chernoff_quantity(g, g, s) - 3.0) <= 1e-12);
  }
  CHECK(std::abs(alpha_divergence(g, g, 0.3)) <= 1e-12);
  CHECK(std::abs(relative_entropy(g, g)) <= 1e-12);
  CHECK(std::abs(chernoff_distance(g, g).value) <= 1e-12);
}

TEST_CASE("rank-one fidelity reduces to sqrt of the overlap") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  Matrix b(2, 2);
  b << 0.5, 0.5, 0.5, 0.5;
  const double f = fidelity(IntensityOperator::from_matrix(a), IntensityOperator::from_matrix(b));
  CHECK(std::abs(f - std::sqrt(0.5)) <= 1e-12);
}

TEST_CASE("commuting pair with swapped eigenvalues") {
  const IntensityOperator a = diag_op({1.0, 2.0});
  const IntensityOperator b = diag_op({2.0, 1.0});
  CHECK(std::abs(chernoff_quantity(a, b, 0.5) - 2.0 * std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(alpha_divergence(a, b, 0.5) - 4.0 * (3.0 - 2.0 * std::sqrt(2.0))) <= 1e-12);
}

TEST_CASE("vacuum versus occupied operator") {
  const IntensityOperator zero = IntensityOperator::from_matrix(Matrix::Zero(2, 2));
  const IntensityOperator b = diag_op({1.5, 0.5});
  CHECK(fidelity(zero, b) == 0.0);
  CHECK(std::abs(bures_sq(zero, b) - 2.0) <= 1e-12);
  CHECK(std::abs(poisson_state_fidelity(zero, b) - std::exp(-1.0)) <= 1e-12);
}

TEST_CASE("orthogonal supports") {
  const IntensityOperator a = diag_op({1.0, 0.0});
  const IntensityOperator b = diag_op({0.0, 1.0});
  CHECK(std::abs(bures_sq(a, b) - 2.0) <= 1e-12);
  CHECK(chernoff_quantity(a, b, 0.0) == 0.0);
  CHECK(chernoff_quantity(a, b, 0.5) <= 1e-12);
  CHECK(chernoff_quantity(a, b, 1.0) == 0.0);

  // Objective s*1 + (1-s)*1 - 0 is constant: sup = 1, reported at a boundary.
  const DivergenceReport rep = chernoff_distance(a, b);
  CHECK(std::abs(rep.value - 1.0) <= 1e-12);
  REQUIRE(rep.s_star.has_value());
  CHECK((*rep.s_star <= 1e-9 || *rep.s_star >= 1.0 - 1e-9));

  CHECK(relative_entropy(a, b) == kInf);
  CHECK(relative_entropy(b, a) == kInf);
}

TEST_CASE("relative entropy support rules") {
  const IntensityOperator full = diag_op({1.0, 1.0});
  const IntensityOperator rank1 = diag_op({1.0, 0.0});
  CHECK(relative_entropy(full, rank1) == kInf);
  // supp(rank1) inside supp(full): N' - N + 0 - 0 = 1.
  CHECK(std::abs(relative_entropy(rank1, full) - 1.0) <= 1e-12);
}

TEST_CASE("product-spectrum fidelity equals the nested-root evaluation") {
  SplitMix64 rng(0xf1de11u);
  for (int rep = 0; rep < 20; ++rep) {
    const IntensityOperator a = testsupport::random_intensity(rng, 4, 0.5, 4.0);
    const IntensityOperator b = testsupport::random_intensity(rng, 4, 0.5, 4.0);
    CHECK(std::abs(fidelity(a, b) - testsupport::fidelity_nested(a, b)) <= 1e-9);
  }
}

TEST_CASE("ordering chain C_half <= F <= sqrt(N N')") {
  SplitMix64 rng(0x0bde11u);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 4);
    const IntensityOperator a = testsupport::random_intensity(rng, d, 0.2, 4.0);
    const IntensityOperator b = testsupport::random_intensity(rng, d, 0.2, 4.0);
    const double f = fidelity(a, b);
    CHECK(chernoff_quantity(a, b, 0.5) <= f + 1e-10);
    CHECK(f <= std::sqrt(a.total() * b.total()) + 1e-10);
  }
}

TEST_CASE("nonnegativity of the distance-like quantities") {
  SplitMix64 rng(0x4e64u);
  for (int rep = 0; rep < 25; ++rep) {
    const IntensityOperator a = testsupport::random_intensity(rng, 3, 0.2, 3.0);
    const IntensityOperator b = testsupport::random_intensity(rng, 3, 0.2, 3.0);
    CHECK(bures_sq(a, b) >= 0.0);
    CHECK(chernoff_distance(a, b).value >= -1e-12);
    CHECK(alpha_divergence(a, b, testsupport::uniform(rng, 0.05, 0.95)) >= -1e-10);
    CHECK(relative_entropy(a, b) >= 0.0);
  }
}

TEST_CASE("commuting operators reduce to their eigenvalue vectors") {
  SplitMix64 rng(0xc033u);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 3;
    const Matrix u = testsupport::random_unitary(rng, d);
    RealVector la(d), lb(d);
    for (int i = 0; i < d; ++i) {
      la[i] = testsupport::uniform(rng, 0.1, 2.0);
      lb[i] = testsupport::uniform(rng, 0.1, 2.0);
    }
    const IntensityOperator a =
        IntensityOperator::from_matrix(u * la.cast<Complex>().asDiagonal() * u.adjoint());
    const IntensityOperator b =
        IntensityOperator::from_matrix(u * lb.cast<Complex>().asDiagonal() * u.adjoint());
    const IntensityVector va(la), vb(lb);
    CHECK(std::abs(fidelity(a, b) - classical_fidelity(va, vb)) <= 1e-10);
    CHECK(std::abs(chernoff_quantity(a, b, 0.3) - classical_chernoff(va, vb, 0.3)) <= 1e-10);
    CHECK(std::abs(alpha_divergence(a, b, 0.7) - classical_alpha_divergence(va, vb, 0.7)) <=
          1e-10);
    CHECK(std::abs(relative_entropy(a, b) - classical_relative_entropy(va, vb)) <= 1e-10);
  }
}

TEST_CASE("joint unitary conjugation leaves every divergence unchanged") {
  SplitMix64 rng(0x17c4u);
  const IntensityOperator a = testsupport::random_intensity(rng, 4, 0.5, 3.0);
  const IntensityOperator b = testsupport::random_intensity(rng, 4, 0.5, 3.0);
  const Matrix u = testsupport::random_unitary(rng, 4);
  const IntensityOperator ua = IntensityOperator::from_matrix(u * a.matrix() * u.adjoint());
  const IntensityOperator ub = IntensityOperator::from_matrix(u * b.matrix() * u.adjoint());
  CHECK(std::abs(fidelity(a, b) - fidelity(ua, ub)) <= 1e-10);
  CHECK(std::abs(chernoff_quantity(a, b, 0.4) - chernoff_quantity(ua, ub, 0.4)) <= 1e-10);
  CHECK(std::abs(relative_entropy(a, b) - relative_entropy(ua, ub)) <= 1e-10);
  CHECK(std::abs(chernoff_distance(a, b).value - chernoff_distance(ua, ub).value) <= 1e-10);
}

TEST_CASE("fidelity is 1-homogeneous in a joint scale factor") {
  SplitMix64 rng(0x5ca1eu);
  const IntensityOperator a = testsupport::random_intensity(rng, 3, 0.5, 2.0);
  const IntensityOperator b = testsupport::random_intensity(rng, 3, 0.5, 2.0);
  const double c = 2.75;
  const IntensityOperator ca = IntensityOperator::from_matrix(c * a.matrix());
  const IntensityOperator cb = IntensityOperator::from_matrix(c * b.matrix());
  CHECK(std::abs(fidelity(ca, cb) - c * fidelity(a, b)) <= 1e-10);
}

TEST_CASE("measurement can only blur the pair") {
  SplitMix64 rng(0x303d0u);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 3);
    const IntensityOperator a = testsupport::random_intensity(rng, d, 0.3, 3.0);
    const IntensityOperator b = testsupport::random_intensity(rng, d, 0.3, 3.0);
    const std::vector<Matrix> povm = testsupport::random_povm(rng, d, d + 1);
    RealVector la(static_cast<Eigen::Index>(povm.size()));
    RealVector lb(static_cast<Eigen::Index>(povm.size()));
    for (std::size_t j = 0; j < povm.size(); ++j) {
      la[static_cast<Eigen::Index>(j)] = (povm[j] * a.matrix()).trace().real();
      lb[static_cast<Eigen::Index>(j)] = (povm[j] * b.matrix()).trace().real();
    }
    const IntensityVector va(la), vb(lb);
    const double s = testsupport::uniform(rng, 0.1, 0.9);
    CHECK(fidelity(a, b) <= classical_fidelity(va, vb) + 1e-8);
    CHECK(chernoff_quantity(a, b, s) <= classical_chernoff(va, vb, s) + 1e-8);
    CHECK(relative_entropy(a, b) >= classical_relative_entropy(va, vb) - 1e-8);
  }
}

TEST_CASE("alpha divergence approaches the relative entropies at the edges") {
  const IntensityOperator a = scalar_op(1.0);
  const IntensityOperator b = scalar_op(4.0);
  CHECK(std::abs(alpha_divergence(a, b, 1.0 - 1e-7) - (3.0 - std::log(4.0))) <= 1e-5);
  CHECK(std::abs(alpha_divergence(a, b, 1e-7) - (4.0 * std::log(4.0) - 3.0)) <= 1e-5);
}

TEST_CASE("s outside the unit interval is rejected") {
  const IntensityOperator a = scalar_op(1.0);
  const IntensityOperator b = scalar_op(4.0);
  CHECK_THROWS_WITH_AS(chernoff_quantity(a, b, -0.1), doctest::Contains("SOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(chernoff_quantity(a, b, 1.1), doctest::Contains("SOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(alpha_divergence(a, b, 0.0), doctest::Contains("SOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(alpha_divergence(a, b, 1.0), doctest::Contains("SOutOfRange"), Error);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_WITH_AS(fidelity(scalar_op(1.0), diag_op({1.0, 2.0})),
                       doctest::Contains("DimensionMismatch"), Error);
  CHECK_THROWS_WITH_AS(classical_fidelity(vec({1.0}), vec({1.0, 2.0})),
                       doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("intensity vectors clip rounding noise but reject real negatives") {
  RealVector v(2);
  v << 1.0, -1e-14;
  const IntensityVector iv((RealVector(v)));
  CHECK(iv[1] == 0.0);
  v << 1.0, -1e-6;
  CHECK_THROWS_WITH_AS(IntensityVector((RealVector(v))), doctest::Contains("NegativeIntensity"),
                       Error);
}

TEST_CASE("classical closed forms") {
  CHECK(std::abs(classical_relative_entropy(vec({1.0}), vec({4.0})) - (3.0 - std::log(4.0))) <=
        1e-12);
  CHECK(classical_relative_entropy(vec({1.0, 1.0}), vec({2.0, 0.0})) == kInf);
  // 0 ln 0 drops out of the sum.
  CHECK(std::abs(classical_relative_entropy(vec({2.0, 0.0}), vec({1.0, 1.0})) -
                 2.0 * std::log(2.0)) <= 1e-12);
  CHECK(std::abs(classical_chernoff(vec({1.0, 1.0}), vec({1.0, 1.0}), 0.37) - 2.0) <= 1e-12);
  CHECK(std::abs(classical_chernoff_distance(vec({1.0, 1.0}), vec({1.0, 1.0})).value) <= 1e-12);
}

TEST_CASE("classical squared distance matches the root-difference identity") {
  SplitMix64 rng(0xb04e5u);
  for (int rep = 0; rep < 20; ++rep) {
    RealVector a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = testsupport::uniform(rng, 0.0, 3.0);
      b[i] = testsupport::uniform(rng, 0.0, 3.0);
    }
    double direct = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double r = std::sqrt(a[i]) - std::sqrt(b[i]);
      direct += r * r;
    }
    CHECK(std::abs(classical_bures_sq(IntensityVector(RealVector(a)),
                                      IntensityVector(RealVector(b))) -
                   direct) <= 1e-12);
  }
}

TEST_CASE("report umbrella dispatches to the direct functions") {
  SplitMix64 rng(0xd15bau);
  const IntensityOperator a = testsupport::random_intensity(rng, 3, 0.5, 2.0);
  const IntensityOperator b = testsupport::random_intensity(rng, 3, 0.5, 2.0);

  const DivergenceReport f = divergence_report(a, b, DivergenceKind::Fidelity);
  CHECK(f.value == fidelity(a, b));
  CHECK_FALSE(f.s_star.has_value());

  const DivergenceReport cs = divergence_report(a, b, DivergenceKind::ChernoffS, 0.3);
  CHECK(cs.value == chernoff_quantity(a, b, 0.3));

  const DivergenceReport cd = divergence_report(a, b, DivergenceKind::ChernoffDistance);
  CHECK(cd.s_star.has_value());

  const DivergenceReport kl = divergence_report(a, b, DivergenceKind::RelEntropy);
  CHECK(kl.value == relative_entropy(a, b));

  // The optimizer is deterministic: repeated runs agree bitwise.
  const DivergenceReport cd2 = divergence_report(a, b, DivergenceKind::ChernoffDistance);
  CHECK(cd.value == cd2.value);
  CHECK(*cd.s_star == *cd2.s_star);
}
