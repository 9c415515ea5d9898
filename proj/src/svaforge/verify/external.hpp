// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/rtl/design.hpp"
#include "svaforge/sva/ast.hpp"
#include "svaforge/verify/verify.hpp"

#include <map>
#include <string>

namespace svaforge::verify {

/// Shell-out contract for an external prover. `command` may contain
/// {file1}, {file2}, and {design}; they are replaced with paths of temporary
/// files holding the printed assertions and the design source.
struct ExternalAdapter {
  std::string command;
  /// Searched in stdout; a match means proven (EQUIVALENT / HOLDS).
  std::string pass_regex = "proven";
  /// Searched when pass_regex does not match; a match means refuted.
  std::string fail_regex = "cex|falsified|failed";
  /// Exit code -> "parse" (read stdout), "pass", or "fail". Unlisted codes
  /// mean the tool is unavailable.
  std::map<int, std::string> exit_codes{{0, "parse"}};
};

/// Equivalence through the external tool.
CheckReport external_check(const sva::Assertion &a1, const sva::Assertion &a2, const ExternalAdapter &adapter);

/// Holds-on-design through the external tool.
CheckReport external_check(const sva::Assertion &a, const rtl::DesignUnit &d, const ExternalAdapter &adapter);

} // namespace svaforge::verify
