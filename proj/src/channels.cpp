// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/channels.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace pinfo {

namespace {

void validate_channel(const UnitaryChannel& ch) {
  if (ch.u.rows() != ch.u.cols() || ch.u.rows() == 0) {
    throw Error(ErrorCode::InvalidChannel, "unitary must be square and non-empty");
  }
  const int d = static_cast<int>(ch.u.rows());
  const double defect = (ch.u.adjoint() * ch.u - Matrix::Identity(d, d)).norm();
  if (defect > 1e-10 * std::sqrt(static_cast<double>(d))) {
    std::ostringstream msg;
    msg << "U^H U deviates from identity by " << defect;
    throw Error(ErrorCode::InvalidChannel, msg.str());
  }
}

void validate_channel(const PovmChannel& ch) {
  if (ch.elements.empty()) {
    throw Error(ErrorCode::InvalidChannel, "POVM needs at least one element");
  }
  const Eigen::Index d = ch.elements.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : ch.elements) {
    if (e.rows() != d || e.cols() != d) {
      throw Error(ErrorCode::InvalidChannel, "POVM elements must share one dimension");
    }
    try {
      validate_psd(e);
    } catch (const Error& err) {
      throw Error(ErrorCode::InvalidChannel, std::string("POVM element invalid: ") + err.what());
    }
    sum += e;
  }
  const double defect = (sum - Matrix::Identity(d, d)).norm();
  if (defect > 1e-10 * std::sqrt(static_cast<double>(d))) {
    std::ostringstream msg;
    msg << "POVM completeness defect " << defect;
    throw Error(ErrorCode::InvalidChannel, msg.str());
  }
}

void validate_channel(const LossChannel& ch) {
  for (Eigen::Index j = 0; j < ch.eta.size(); ++j) {
    if (!(ch.eta[j] >= 0.0 && ch.eta[j] <= 1.0)) {
      std::ostringstream msg;
      msg << "transmission eta[" << j << "] = " << ch.eta[j] << " outside [0, 1]";
      throw Error(ErrorCode::InvalidChannel, msg.str());
    }
  }
}

void validate_offset(const Matrix& gamma_prime, const char* what) {
  try {
    validate_psd(gamma_prime);
  } catch (const Error& err) {
    throw Error(ErrorCode::InvalidChannel, std::string(what) + " invalid: " + err.what());
  }
}

void validate_channel(const MarginalizeChannel& ch) {
  std::set<int> seen;
  for (int idx : ch.keep) {
    if (idx < 0 || !seen.insert(idx).second) {
      throw Error(ErrorCode::InvalidChannel, "keep indices must be distinct and nonnegative");
    }
  }
  if (ch.keep.empty()) {
    throw Error(ErrorCode::InvalidChannel, "keep set must be non-empty");
  }
}

void validate_channel(const AffineChannel& ch) {
  validate_offset(ch.gamma_prime, "affine offset");
  if (ch.kraus.empty()) return;
  const Eigen::Index rows = ch.kraus.front().rows();
  const Eigen::Index cols = ch.kraus.front().cols();
  for (const Matrix& a : ch.kraus) {
    if (a.rows() != rows || a.cols() != cols) {
      throw Error(ErrorCode::InvalidChannel, "Kraus blocks must share one shape");
    }
  }
}

IntensityOperator to_intensity(Matrix m) {
  return IntensityOperator::from_matrix(0.5 * (m + m.adjoint()));
}

}  // namespace

ChannelSpec::ChannelSpec(Variant channel) : channel_(std::move(channel)) {
  std::visit(
      [](const auto& ch) {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, BackgroundChannel> || std::is_same_v<T, ComposeChannel>) {
          validate_offset(ch.gamma_prime, "offset intensity");
        } else {
          validate_channel(ch);
        }
      },
      channel_);
}

const char* ChannelSpec::kind_name() const {
  struct Namer {
    const char* operator()(const UnitaryChannel&) const { return "unitary"; }
    const char* operator()(const PovmChannel&) const { return "povm"; }
    const char* operator()(const LossChannel&) const { return "loss"; }
    const char* operator()(const BackgroundChannel&) const { return "background"; }
    const char* operator()(const ComposeChannel&) const { return "compose"; }
    const char* operator()(const MarginalizeChannel&) const { return "marginalize"; }
    const char* operator()(const AffineChannel&) const { return "affine"; }
  };
  return std::visit(Namer{}, channel_);
}

ChannelOutput apply(const ChannelSpec& spec, const IntensityOperator& gamma) {
  const Matrix& g = gamma.matrix();
  const int d = gamma.dim();

  if (const auto* ch = std::get_if<UnitaryChannel>(&spec.channel())) {
    if (ch->u.rows() != d) {
      throw Error(ErrorCode::DimensionMismatch, "unitary dimension does not match gamma");
    }
    return to_intensity(ch->u * g * ch->u.adjoint());
  }
  if (const auto* ch = std::get_if<PovmChannel>(&spec.channel())) {
    if (ch->elements.front().rows() != d) {
      throw Error(ErrorCode::DimensionMismatch, "POVM dimension does not match gamma");
    }
    RealVector lambda(ch->elements.size());
    for (std::size_t j = 0; j < ch->elements.size(); ++j) {
      lambda[static_cast<Eigen::Index>(j)] = (ch->elements[j] * g).trace().real();
    }
    return IntensityVector(std::move(lambda));
  }
  if (const auto* ch = std::get_if<LossChannel>(&spec.channel())) {
    if (ch->eta.size() != d) {
      throw Error(ErrorCode::DimensionMismatch, "loss vector length does not match gamma");
    }
    const RealVector t = ch->eta.cwiseSqrt();
    return to_intensity(t.asDiagonal() * g * t.asDiagonal());
  }
  if (const auto* ch = std::get_if<BackgroundChannel>(&spec.channel())) {
    if (ch->gamma_prime.rows() != d) {
      throw Error(ErrorCode::DimensionMismatch, "background dimension does not match gamma");
    }
    return to_intensity(g + ch->gamma_prime);
  }
  if (const auto* ch = std::get_if<ComposeChannel>(&spec.channel())) {
    const int dp = static_cast<int>(ch->gamma_prime.rows());
    Matrix out = Matrix::Zero(d + dp, d + dp);
    out.topLeftCorner(d, d) = g;
    out.bottomRightCorner(dp, dp) = ch->gamma_prime;
    return to_intensity(std::move(out));
  }
  if (const auto* ch = std::get_if<MarginalizeChannel>(&spec.channel())) {
    for (int idx : ch->keep) {
      if (idx >= d) {
        throw Error(ErrorCode::DimensionMismatch, "keep index exceeds gamma dimension");
      }
    }
    const int m = static_cast<int>(ch->keep.size());
    Matrix out(m, m);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) out(r, c) = g(ch->keep[r], ch->keep[c]);
    }
    return to_intensity(std::move(out));
  }
  const auto& ch = std::get<AffineChannel>(spec.channel());
  if (!ch.kraus.empty() && ch.kraus.front().cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "Kraus block width does not match gamma");
  }
  Matrix out = ch.gamma_prime;
  for (const Matrix& a : ch.kraus) out += a * g * a.adjoint();
  return to_intensity(std::move(out));
}

ChannelSpec affine_from_kraus(const std::vector<KrausBlock>& blocks, double tau0_weight) {
  if (blocks.empty()) {
    throw Error(ErrorCode::InvalidChannel, "at least one Kraus block is required");
  }
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const KrausBlock& b : blocks) {
    if (b.a10.size()) {
      if (b.a10.cols() != 1) {
        throw Error(ErrorCode::InvalidChannel, "a10 blocks must be column vectors");
      }
      if (rows && b.a10.rows() != rows) {
        throw Error(ErrorCode::InvalidChannel, "Kraus blocks disagree on the output dimension");
      }
      rows = b.a10.rows();
    }
    if (b.a11.size()) {
      if (rows && b.a11.rows() != rows) {
        throw Error(ErrorCode::InvalidChannel, "Kraus blocks disagree on the output dimension");
      }
      if (cols && b.a11.cols() != cols) {
        throw Error(ErrorCode::InvalidChannel, "Kraus blocks disagree on the input dimension");
      }
      rows = b.a11.rows();
      cols = b.a11.cols();
    }
  }
  if (rows == 0) {
    throw Error(ErrorCode::InvalidChannel, "Kraus blocks carry no data");
  }

  Matrix gamma_prime = Matrix::Zero(rows, rows);
  double created = 0.0;
  std::vector<Matrix> kraus;
  for (const KrausBlock& b : blocks) {
    if (b.a10.size()) {
      gamma_prime += b.a10 * b.a10.adjoint();
      created += b.a10.squaredNorm();
    }
    if (b.a11.size()) kraus.push_back(b.a11);
  }
  if (created > tau0_weight * (1.0 + 1e-9) + 1e-12) {
    std::ostringstream msg;
    msg << "blocks create intensity " << created << " beyond the declared budget " << tau0_weight;
    throw Error(ErrorCode::RarityViolated, msg.str());
  }
  if (cols > 0) {
    // Transported weight cannot exceed unity per input mode for a map that
    // stems from a trace-preserving single-object channel.
    Matrix acc = Matrix::Zero(cols, cols);
    for (const Matrix& a : kraus) acc += a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(acc);
    if (solver.eigenvalues().maxCoeff() > 1.0 + 1e-8) {
      std::ostringstream msg;
      msg << "sum of A^H A has eigenvalue " << solver.eigenvalues().maxCoeff() << " above 1";
      throw Error(ErrorCode::InvalidChannel, msg.str());
    }
  }
  return ChannelSpec(AffineChannel{0.5 * (gamma_prime + gamma_prime.adjoint()), std::move(kraus)});
}

}  // namespace pinfo
