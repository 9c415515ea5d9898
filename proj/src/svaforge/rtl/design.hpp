// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/sva/ast.hpp"
#include "svaforge/trace/trace.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace svaforge::rtl {

enum class Direction { Input, Output };
enum class NetKind { Wire, Reg };

struct Port {
  std::string name;
  Direction dir = Direction::Input;
  NetKind kind = NetKind::Wire;
  uint32_t width = 1;
};

struct Net {
  std::string name;
  NetKind kind = NetKind::Wire;
  uint32_t width = 1;
};

struct ContinuousAssign {
  std::string target;
  sva::BoolPtr expr;
  std::size_t offset = 0;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct NonblockingAssign {
  std::string target;
  sva::BoolPtr expr;
};

struct IfStmt {
  sva::BoolPtr cond;
  StmtPtr then_branch;
  StmtPtr else_branch; // may be null
};

struct BlockStmt {
  std::vector<StmtPtr> body;
};

struct CaseItem {
  std::vector<sva::BoolPtr> labels; // empty for `default`
  StmtPtr body;
};

struct CaseStmt {
  sva::BoolPtr subject;
  std::vector<CaseItem> items;
};

struct Stmt {
  std::variant<NonblockingAssign, IfStmt, BlockStmt, CaseStmt> node;
};

struct EdgeSpec {
  sva::Edge edge = sva::Edge::Posedge;
  std::string signal;
};

struct SeqProcess {
  EdgeSpec clock;
  std::optional<EdgeSpec> async_reset;
  StmtPtr body;
};

enum class ResetKind { Sync, Async };

struct ResetInfo {
  std::string signal;
  bool active_high = true;
  ResetKind kind = ResetKind::Sync;
};

struct DesignUnit {
  std::string name;
  std::optional<std::string> spec;
  std::string source;
  std::vector<Port> ports;
  std::vector<Net> nets; // internal declarations, ports excluded
  std::vector<ContinuousAssign> assigns;
  std::vector<SeqProcess> processes;
  std::map<std::string, uint64_t> parameters;
  std::optional<std::string> clock;
  std::optional<ResetInfo> reset;
  /// Why clock detection came back empty, when it did.
  std::string clock_issue;

  const Port *port(std::string_view n) const;
  /// Width of a port or internal net.
  std::optional<uint32_t> width_of(std::string_view n) const;
  /// Ports then internal nets, in declaration order.
  std::vector<trace::Signal> signals() const;
  /// Input ports other than the clock, in declaration order.
  std::vector<std::string> stimulus_inputs() const;
};

inline const std::vector<std::string> kDefaultResetPatterns = {"rst", "reset", "rst_n", "resetn"};

/// Parses one flat module. Clock and reset are detected with `reset_patterns`.
DesignUnit parse_design(std::string_view text,
                        const std::vector<std::string> &reset_patterns = kDefaultResetPatterns);

struct ClockReset {
  std::optional<std::string> clock;
  std::optional<ResetInfo> reset;
  std::string issue; // "no-processes", "multiple-clocks", or empty
};

ClockReset detect_clock_reset(const DesignUnit &d,
                              const std::vector<std::string> &reset_patterns = kDefaultResetPatterns);

struct Rejection {
  std::string design;
  std::string reason; // no-clock, no-reset, multiple-clocks
};

struct CurateResult {
  std::vector<DesignUnit> kept;
  std::vector<Rejection> rejected;
};

CurateResult curate(const std::vector<DesignUnit> &designs);

//===----------------------------------------------------------------------===//
// Simulation
//===----------------------------------------------------------------------===//

/// Compiled, cycle-based simulator. State is the register vector; a full
/// valuation covers every signal of DesignUnit::signals().
class Simulator {
public:
  explicit Simulator(const DesignUnit &d);

  using State = std::vector<uint64_t>;

  const std::vector<trace::Signal> &signals() const { return signals_; }
  /// Indices into signals() of the stimulus inputs, in stimulus order.
  const std::vector<std::size_t> &input_indices() const { return inputs_; }
  std::optional<std::size_t> clock_index() const { return clock_; }
  std::optional<std::size_t> reset_index() const { return reset_; }
  uint64_t reset_active_value() const { return reset_active_; }
  uint64_t reset_inactive_value() const { return reset_active_ ? 0 : 1; }

  State initial_state() const { return State(regs_.size(), 0); }

  /// Settled pre-edge valuation for a state and stimulus row.
  std::vector<uint64_t> settle(const State &s, const std::vector<uint64_t> &inputs) const;
  /// Register values after the clock edge.
  State next(const std::vector<uint64_t> &valuation) const;

private:
  struct Proc;
  std::vector<trace::Signal> signals_;
  std::vector<std::size_t> inputs_;
  std::vector<std::size_t> regs_; // signal indices of registers
  std::vector<int> reg_slot_;     // signal index -> register slot or -1
  std::optional<std::size_t> clock_;
  std::optional<std::size_t> reset_;
  uint64_t reset_active_ = 1;
  std::vector<std::pair<std::size_t, trace::CompiledBool>> assigns_; // topological order
  std::vector<std::shared_ptr<const Proc>> procs_;

  friend class ProcCompiler;
};

/// Runs the design on `stimulus` (rows ordered as stimulus_inputs()). The
/// reset input is forced active for the first `reset_ticks` ticks.
trace::Trace simulate(const DesignUnit &d, const std::vector<std::vector<uint64_t>> &stimulus,
                      uint32_t reset_ticks);

} // namespace svaforge::rtl
