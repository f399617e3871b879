// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pinfo {

/// Runs one command-line invocation (arguments without the program name).
/// Returns the process exit code: 0 on success (an infinite divergence is a
/// success), 1 on domain errors, 2 on usage errors.  All output goes through
/// the supplied streams, which keeps the front end testable in-process.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinfo
