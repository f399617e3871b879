// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "pinfo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pinfo::dispatch(args, std::cout, std::cerr);
}
