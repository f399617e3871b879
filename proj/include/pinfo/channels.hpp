// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <variant>
#include <vector>

#include "pinfo/divergences.hpp"
#include "pinfo/poisson_state.hpp"

namespace pinfo {

/// Gamma -> U Gamma U^H.
struct UnitaryChannel {
  Matrix u;
};

/// Destructive measurement: Gamma -> (tr E_j Gamma)_j.
struct PovmChannel {
  std::vector<Matrix> elements;
};

/// Mode-wise attenuation Gamma -> T Gamma T with T = diag(sqrt(eta)).
struct LossChannel {
  RealVector eta;
};

/// Independent background superposed on the signal: Gamma -> Gamma + Gamma'.
/// Not linear: the empty process maps to Gamma', not to 0.
struct BackgroundChannel {
  Matrix gamma_prime;
};

/// Merge with an independent process on fresh modes: Gamma -> Gamma (+) Gamma'.
struct ComposeChannel {
  Matrix gamma_prime;
};

/// Restriction to a subset of modes: the principal submatrix on `keep`.
struct MarginalizeChannel {
  std::vector<int> keep;
};

/// General affine map Gamma -> Gamma' + sum_alpha A_alpha Gamma A_alpha^H.
struct AffineChannel {
  Matrix gamma_prime;
  std::vector<Matrix> kraus;
};

/// One Kraus block of a single-object map in the rare-object scaling:
/// a10 (column, may be empty) creates objects from the vacuum and accumulates
/// into the offset Gamma' = sum a10 a10^H; a11 (may be empty) transports the
/// object sector.
struct KrausBlock {
  Matrix a10;
  Matrix a11;
};

/// Validated channel: construction checks the defining constraints
/// (unitarity, POVM completeness, eta in [0, 1], PSD offsets) and raises
/// InvalidChannel on violation.
class ChannelSpec {
 public:
  using Variant = std::variant<UnitaryChannel, PovmChannel, LossChannel, BackgroundChannel,
                               ComposeChannel, MarginalizeChannel, AffineChannel>;

  explicit ChannelSpec(Variant channel);

  const Variant& channel() const { return channel_; }
  const char* kind_name() const;

 private:
  Variant channel_;
};

using ChannelOutput = std::variant<IntensityOperator, IntensityVector>;

/// Applies the channel in intensity form.  POVM channels produce an
/// IntensityVector; every other kind produces a validated IntensityOperator.
ChannelOutput apply(const ChannelSpec& spec, const IntensityOperator& gamma);

/// Builds the affine intensity map induced by the Kraus blocks.  tau0_weight
/// is the caller's budget for the created intensity tr Gamma' =
/// sum_alpha |a10_alpha|^2; exceeding it means the map creates more objects
/// than the rare-object scaling allows and raises RarityViolated.
ChannelSpec affine_from_kraus(const std::vector<KrausBlock>& blocks, double tau0_weight);

}  // namespace pinfo
