// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>

namespace svaforge::testing {

inline std::string golden_path(const std::string &name) { return std::string(SVAFORGE_TEST_DIR) + "/golden/" + name; }

/// Compares `actual` with tests/golden/<name>. With SVAFORGE_UPDATE_GOLDEN set
/// the file is rewritten instead.
inline bool matches_golden(const std::string &name, const std::string &actual) {
  if (std::getenv("SVAFORGE_UPDATE_GOLDEN")) {
    std::ofstream(golden_path(name), std::ios::binary) << actual;
    return true;
  }
  std::ifstream in(golden_path(name), std::ios::binary);
  if (!in)
    return false;
  std::string expected((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return expected == actual;
}

} // namespace svaforge::testing
