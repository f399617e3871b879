// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "pinfo/channels.hpp"
#include "pinfo/divergences.hpp"

namespace pinfo {

/// Count records from independent repetitions of a Poisson measurement:
/// counts(t, j) is the number of outcome-j events in trial t.
struct SampleBatch {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  RealVector lambda_used;
  std::uint64_t seed = 0;
};

/// Draws `trials` independent realizations of the process with bin
/// intensities Lambda: a total count L ~ Poisson(sum Lambda) thinned over
/// bins with probabilities Lambda_j / sum Lambda.  Joint bin counts are then
/// independent Poissons, which the tests verify empirically.
///
/// Trials are keyed individually from (seed, trial index), so any partition
/// of the trial range reproduces the same rows.
SampleBatch sample(const IntensityVector& lambda, std::int64_t trials, std::uint64_t seed);

/// Rows [first_trial, first_trial + trials) of the stream defined by `seed`.
SampleBatch sample_block(const IntensityVector& lambda, std::int64_t first_trial,
                         std::int64_t trials, std::uint64_t seed);

/// Applies a POVM channel to gamma and samples the resulting intensities.
SampleBatch measure_and_sample(const ChannelSpec& povm, const IntensityOperator& gamma,
                               std::int64_t trials, std::uint64_t seed);

/// Monte Carlo estimate of D(Lambda || Lambda') from counts drawn under
/// Lambda: mean over trials of sum_j [Lambda'_j - Lambda_j +
/// m_j ln(Lambda_j / Lambda'_j)].  Requires supp Lambda within supp Lambda'
/// (SupportViolation otherwise).
double empirical_relative_entropy(const SampleBatch& batch, const IntensityVector& lambda,
                                  const IntensityVector& lambda_prime);

/// Single Poisson draw; inversion below mean 10, rejection above.  Exposed
/// for direct testing of both branches.
std::int64_t poisson_draw(SplitMix64& rng, double mean);

}  // namespace pinfo
