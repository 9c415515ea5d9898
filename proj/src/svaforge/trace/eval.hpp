// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/sva/ast.hpp"
#include "svaforge/trace/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace svaforge::trace {

enum class Verdict { Pass, Fail, Undetermined };

enum class AttemptStatus { Satisfied, Failed, Pending, Disabled, Vacuous };

const char *verdict_name(Verdict v);
const char *attempt_status_name(AttemptStatus s);

struct Attempt {
  std::size_t start = 0;
  AttemptStatus status = AttemptStatus::Satisfied;
  /// Tick at which the outcome became known; empty while pending.
  std::optional<std::size_t> decided_at;
};

struct EvalResult {
  Verdict verdict = Verdict::Pass;
  std::vector<Attempt> attempts;

  std::size_t count(AttemptStatus s) const;
};

/// Evaluates an assertion with one attempt per tick. Only the disable and body
/// signals must be present in the trace; the clock is implied by the ticks.
///
/// An attempt is disabled when `disable iff` samples nonzero at any tick from
/// its start through the tick its outcome is decided (through the last tick
/// while undecided). A vacuous attempt is one whose top-level implication
/// antecedent completed without a match.
EvalResult eval_assertion(const sva::Assertion &a, const Trace &trace);

} // namespace svaforge::trace
