// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "pinfo/channels.hpp"
#include "pinfo/divergences.hpp"
#include "pinfo/poisson_state.hpp"

namespace pinfo {

/// Matrix wire format: {"dim": n, "re": [[...]], "im": [[...]]}, row-major;
/// "im" may be omitted for real matrices.
Matrix read_matrix(const nlohmann::json& j);

/// Accepts either the matrix form above or {"N": x, "tau1": <matrix>}.
IntensityOperator read_intensity(const nlohmann::json& j);

/// Accepts a plain array of numbers or {"values": [...]}.
IntensityVector read_intensity_vector(const nlohmann::json& j);

/// Channel wire format: {"kind": "...", ...} with kind-specific fields
/// (see the README for the full list).
ChannelSpec read_channel(const nlohmann::json& j);

nlohmann::json parse_json_file(const std::string& path);

/// Emitters produce byte-stable text: every floating-point number is
/// rendered in scientific notation with 17 significant digits and
/// infinities as the string "inf".
std::string emit_matrix(const Matrix& m);
std::string emit_intensity_vector(const IntensityVector& v);
std::string emit_report(const DivergenceReport& report);

/// JSON value text for one double (quoted only when not finite).
std::string json_number(double v);

}  // namespace pinfo
