// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/rtl/design.hpp"
#include "svaforge/sva/ast.hpp"
#include "svaforge/trace/eval.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace svaforge::verify {

struct Bound {
  uint32_t max_len = 6;
  uint64_t max_states = uint64_t{1} << 22;
  /// Ticks of forced reset before design-mode stimulus.
  uint32_t reset_ticks = 1;
  /// Widest signal that may be enumerated freely.
  uint32_t width_limit = 8;
};

/// Signal name -> width for free-mode enumeration.
using WidthTable = std::map<std::string, uint32_t>;

/// Name under which an assertion may refer to the design's reset state when
/// the design does not declare it.
inline constexpr const char *kResetAlias = "tb_reset";

enum class Outcome { Holds, Fails, Equivalent, Distinguished };

const char *outcome_name(Outcome o);

struct CheckReport {
  Outcome outcome = Outcome::Holds;
  /// Set when the assertion also cannot fail on any free trace.
  bool tautology = false;
  /// Counterexample (Fails) or distinguishing trace (Distinguished).
  std::optional<trace::Trace> witness;
  /// Verdicts of the first and second assertion on the witness.
  std::optional<trace::Verdict> witness_verdict1, witness_verdict2;
  uint64_t attempts_vacuous = 0;
  uint64_t attempts_total = 0;
  /// Traces covered by the enumeration (saturating).
  uint64_t enumerated = 0;
  /// Distinct search states visited.
  uint64_t states = 0;
  Bound bound;
  std::string mode; // "free", "design", or "external"
  std::string note;

  bool positive() const { return outcome == Outcome::Holds || outcome == Outcome::Equivalent; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct FreeMode {
  WidthTable widths;
};

struct DesignMode {
  const rtl::DesignUnit *design = nullptr;
};

using Mode = std::variant<FreeMode, DesignMode>;

/// Checks `a` on every reachable trace of `d`: `reset_ticks` of forced reset,
/// then every stimulus of length 1..max_len over the inputs other than clock
/// and reset (reset is held inactive). The smallest counterexample by
/// (length, lexicographic stimulus) is reported.
CheckReport holds_on_design(const sva::Assertion &a, const rtl::DesignUnit &d, const Bound &b = {});

/// Three-valued verdict agreement on every trace of length 1..max_len.
CheckReport equivalent(const sva::Assertion &a1, const sva::Assertion &a2, const Bound &b, const Mode &mode);

/// True iff no free trace of length 1..max_len makes `a` fail.
bool free_tautology(const sva::Assertion &a, const Bound &b, const WidthTable &widths);

/// Body and disable signals; the clock is not part of a trace.
std::vector<std::string> data_signals(const sva::Assertion &a);

} // namespace svaforge::verify
