// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/kac_sampler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pinfo {

namespace {

std::uint64_t trial_key(std::uint64_t seed, std::int64_t trial) {
  // Mixing the seed before combining keeps nearby seeds from producing
  // correlated trial streams.
  return SplitMix64::mix(SplitMix64::mix(seed) ^
                         (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1)));
}

std::int64_t poisson_inversion(SplitMix64& rng, double mean) {
  const double u = rng.next_double();
  double p = std::exp(-mean);
  double cum = p;
  std::int64_t k = 0;
  const std::int64_t cap = static_cast<std::int64_t>(mean + 40.0 * std::sqrt(mean + 1.0) + 100.0);
  while (u > cum && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cum += p;
  }
  return k;
}

std::int64_t poisson_rejection(SplitMix64& rng, double mean) {
  // Lorentzian comparison function (Numerical Recipes): proposals
  // em = sq * tan(pi u) + mean accepted against the Poisson mass ratio.
  const double sq = std::sqrt(2.0 * mean);
  const double log_mean = std::log(mean);
  const double g = mean * log_mean - std::lgamma(mean + 1.0);
  while (true) {
    double em;
    double y;
    do {
      y = std::tan(std::numbers::pi * rng.next_double());
      em = sq * y + mean;
    } while (em < 0.0);
    em = std::floor(em);
    const double t = 0.9 * (1.0 + y * y) * std::exp(em * log_mean - std::lgamma(em + 1.0) - g);
    if (rng.next_double() <= t) return static_cast<std::int64_t>(em);
  }
}

}  // namespace

std::int64_t poisson_draw(SplitMix64& rng, double mean) {
  if (mean <= 0.0) return 0;
  return mean < 10.0 ? poisson_inversion(rng, mean) : poisson_rejection(rng, mean);
}

SampleBatch sample_block(const IntensityVector& lambda, std::int64_t first_trial,
                         std::int64_t trials, std::uint64_t seed) {
  if (trials < 0 || first_trial < 0) {
    throw Error(ErrorCode::BadInput, "trial counts must be nonnegative");
  }
  const int bins = lambda.size();
  const double total = lambda.total();
  SampleBatch batch;
  batch.seed = seed;
  batch.lambda_used = lambda.values();
  batch.counts.setZero(trials, bins);

  // Cumulative bin probabilities; a zero-width bin can never be selected.
  RealVector cum(bins);
  double acc = 0.0;
  for (int j = 0; j < bins; ++j) {
    acc += total > 0.0 ? lambda[j] / total : 0.0;
    cum[j] = acc;
  }

  for (std::int64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(trial_key(seed, first_trial + t));
    const std::int64_t events = poisson_draw(rng, total);
    for (std::int64_t e = 0; e < events; ++e) {
      const double u = rng.next_double();
      int j = 0;
      while (j < bins - 1 && u >= cum[j]) ++j;
      batch.counts(t, j) += 1;
    }
  }
  return batch;
}

SampleBatch sample(const IntensityVector& lambda, std::int64_t trials, std::uint64_t seed) {
  return sample_block(lambda, 0, trials, seed);
}

SampleBatch measure_and_sample(const ChannelSpec& povm, const IntensityOperator& gamma,
                               std::int64_t trials, std::uint64_t seed) {
  if (!std::holds_alternative<PovmChannel>(povm.channel())) {
    throw Error(ErrorCode::InvalidChannel, "measure_and_sample needs a POVM channel");
  }
  ChannelOutput out = apply(povm, gamma);
  return sample(std::get<IntensityVector>(out), trials, seed);
}

double empirical_relative_entropy(const SampleBatch& batch, const IntensityVector& lambda,
                                  const IntensityVector& lambda_prime) {
  if (lambda.size() != lambda_prime.size() || batch.counts.cols() != lambda.size()) {
    throw Error(ErrorCode::LengthMismatch, "bin counts of batch and intensities differ");
  }
  for (int j = 0; j < lambda.size(); ++j) {
    if (lambda[j] > 0.0 && lambda_prime[j] == 0.0) {
      std::ostringstream msg;
      msg << "bin " << j << " has reference intensity zero but hypothesis intensity "
          << lambda[j];
      throw Error(ErrorCode::SupportViolation, msg.str());
    }
  }
  const std::int64_t trials = batch.counts.rows();
  if (trials == 0) return 0.0;
  const double base = lambda_prime.total() - lambda.total();
  double acc = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    double v = base;
    for (int j = 0; j < lambda.size(); ++j) {
      const std::int64_t m = batch.counts(t, j);
      if (m == 0) continue;
      if (lambda[j] == 0.0) return -std::numeric_limits<double>::infinity();
      v += static_cast<double>(m) * std::log(lambda[j] / lambda_prime[j]);
    }
    acc += v;
  }
  return acc / static_cast<double>(trials);
}

}  // namespace pinfo
