// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/sva/ast.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace svaforge::trace {

struct Signal {
  std::string name;
  uint32_t width = 1;
};

/// Sampled values at consecutive clock ticks. steps()[t][s] is the value of
/// signal s at tick t.
class Trace {
public:
  Trace() = default;
  explicit Trace(std::vector<Signal> signals);

  const std::vector<Signal> &signals() const { return signals_; }
  std::size_t length() const { return steps_.size(); }
  const std::vector<std::vector<uint64_t>> &steps() const { return steps_; }

  std::optional<std::size_t> index_of(const std::string &name) const;
  uint64_t value(std::size_t tick, std::size_t signal) const { return steps_[tick][signal]; }
  uint64_t value(std::size_t tick, const std::string &name) const;

  /// Appends a step; throws InvalidArgument when the step has the wrong arity
  /// or a value does not fit its signal's width.
  void add_step(std::vector<uint64_t> values);

  /// Prefix of the first n steps.
  Trace prefix(std::size_t n) const;

  bool operator==(const Trace &o) const;

private:
  std::vector<Signal> signals_;
  std::vector<std::vector<uint64_t>> steps_;
};

inline uint64_t width_mask(uint32_t width) {
  return width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
}

/// Tick-by-tick text table, one row per signal.
std::string format_table(const Trace &t);

//===----------------------------------------------------------------------===//
// Boolean evaluation
//===----------------------------------------------------------------------===//

/// Source of sampled values. `back` counts ticks before the current one; a
/// sample before time zero must read as 0.
class Sampler {
public:
  virtual ~Sampler() = default;
  virtual uint64_t sample(std::size_t signal, uint32_t back) const = 0;
};

struct SignalRef {
  std::size_t index;
  uint32_t width;
};

using Resolver = std::function<std::optional<SignalRef>(const std::string &)>;

Resolver resolver_for(const Trace &t);

/// BoolExpr with identifiers bound to signal indices.
///
/// Sizing follows Verilog context rules: operands of arithmetic and bitwise
/// operators are extended to the widest operand in the expression context
/// and the result is truncated to it; comparisons size both sides to their
/// common width and yield 1 bit; logical operators treat each operand on its
/// own. An unsized decimal literal is only as wide as its value, so it never
/// widens the context: `~m + 1` over a 4-bit `m` is computed modulo 16.
class CompiledBool {
public:
  CompiledBool() = default;
  CompiledBool(const sva::BoolExpr &e, const Resolver &resolve);

  /// Evaluates at max(width(), ctx) bits; ctx is the width of an assignment
  /// target, 0 when there is none.
  uint64_t eval(const Sampler &s, uint32_t ctx = 0) const;
  uint32_t width() const;
  /// Largest `back` this expression may request.
  uint32_t history() const { return history_; }

private:
  struct Node {
    enum class Op {
      Signal, Literal, Not, BitNot, Neg, Bin, Past, Rose, Fell, Stable, Cond, Concat,
    } op;
    sva::BinaryOp bop{};
    std::size_t signal = 0;
    uint32_t msb = 0, lsb = 0;
    bool select = false;
    uint64_t value = 0;
    uint32_t depth = 0;
    uint32_t self_width = 0;
    std::vector<int> kids;
  };

  int build(const sva::BoolExpr &e, const Resolver &resolve, uint32_t back);
  uint64_t eval_node(int n, uint32_t ctx, uint32_t back, const Sampler &s) const;
  uint32_t sized(int n) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  uint32_t history_ = 0;
};

/// Evaluates `e` at tick t of a trace.
uint64_t eval_bool(const sva::BoolExpr &e, const Trace &trace, std::size_t t);

/// Sampler over a trace positioned at tick t.
class TraceSampler : public Sampler {
public:
  TraceSampler(const Trace &t, std::size_t tick) : trace_(t), tick_(tick) {}
  uint64_t sample(std::size_t signal, uint32_t back) const override {
    return back > tick_ ? 0 : trace_.value(tick_ - back, signal);
  }

private:
  const Trace &trace_;
  std::size_t tick_;
};

} // namespace svaforge::trace
