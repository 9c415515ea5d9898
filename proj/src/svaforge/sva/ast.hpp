// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Immutable AST for the supported SystemVerilog assertion subset. Nodes are
// shared, never mutated after construction, and compared structurally.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace svaforge::sva {

struct BoolExpr;
struct SequenceExpr;
struct PropertyExpr;

using BoolPtr = std::shared_ptr<const BoolExpr>;
using SeqPtr = std::shared_ptr<const SequenceExpr>;
using PropPtr = std::shared_ptr<const PropertyExpr>;

//===----------------------------------------------------------------------===//
// Boolean layer
//===----------------------------------------------------------------------===//

enum class UnaryOp { LogicalNot, BitwiseNot, Negate };

enum class BinaryOp {
  LogicalAnd,
  LogicalOr,
  BitAnd,
  BitOr,
  BitXor,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Add,
  Sub,
  Shl,
  Shr,
};

enum class SampledFn { Rose, Fell, Stable };

struct Select {
  uint32_t msb = 0;
  uint32_t lsb = 0;
  bool part = false; // `[m:n]` rather than `[i]`
  bool operator==(const Select &) const = default;
};

struct Ident {
  std::string name;
  std::optional<Select> select;
};

struct Literal {
  uint32_t width = 32;
  uint64_t value = 0;
  char base = 'd';    // b, d, h, o; display only
  bool sized = false; // false for bare decimals
};

struct Unary {
  UnaryOp op;
  BoolPtr operand;
};

struct Binary {
  BinaryOp op;
  BoolPtr lhs;
  BoolPtr rhs;
};

struct Past {
  BoolPtr operand;
  uint32_t depth = 1;
};

struct Sampled {
  SampledFn fn;
  BoolPtr operand;
};

// RTL-only forms. The assertion parser rejects them; rtl-lite uses the same
// expression tree for continuous assigns and register updates.
struct Cond {
  BoolPtr cond;
  BoolPtr then_expr;
  BoolPtr else_expr;
};

struct Concat {
  std::vector<BoolPtr> parts; // most significant first
};

struct BoolExpr {
  std::variant<Ident, Literal, Unary, Binary, Past, Sampled, Cond, Concat> node;
};

//===----------------------------------------------------------------------===//
// Sequence layer
//===----------------------------------------------------------------------===//

struct SeqBool {
  BoolPtr expr;
};

/// `left ##[lo:hi] right`, or `##[lo:hi] right` when left is null.
struct SeqDelay {
  uint32_t lo = 1;
  uint32_t hi = 1;
  SeqPtr left;
  SeqPtr right;
};

/// Consecutive repetition `seq[*lo:hi]`, lo >= 1.
struct SeqRepeat {
  SeqPtr seq;
  uint32_t lo = 1;
  uint32_t hi = 1;
};

struct SeqAnd {
  SeqPtr lhs;
  SeqPtr rhs;
};

struct SeqOr {
  SeqPtr lhs;
  SeqPtr rhs;
};

struct SequenceExpr {
  std::variant<SeqBool, SeqDelay, SeqRepeat, SeqAnd, SeqOr> node;
};

//===----------------------------------------------------------------------===//
// Property layer
//===----------------------------------------------------------------------===//

struct PropImplication {
  bool overlapped = true; // |-> vs |=>
  SeqPtr antecedent;
  PropPtr consequent;
};

struct PropAnd {
  PropPtr lhs;
  PropPtr rhs;
};

struct PropOr {
  PropPtr lhs;
  PropPtr rhs;
};

struct PropNot {
  PropPtr operand;
};

struct PropSeq {
  SeqPtr seq;
};

struct PropertyExpr {
  std::variant<PropImplication, PropAnd, PropOr, PropNot, PropSeq> node;
};

//===----------------------------------------------------------------------===//
// Assertion
//===----------------------------------------------------------------------===//

enum class Edge { Posedge, Negedge };

struct ClockEvent {
  Edge edge = Edge::Posedge;
  std::string signal;
};

struct Assertion {
  std::string label; // empty when unlabeled
  ClockEvent clock;
  BoolPtr disable; // null when there is no `disable iff`
  PropPtr body;
  std::pair<std::size_t, std::size_t> source_span{0, 0};
};

//===----------------------------------------------------------------------===//
// Builders
//===----------------------------------------------------------------------===//

BoolPtr make_ident(std::string name, std::optional<Select> select = std::nullopt);
BoolPtr make_literal(uint32_t width, uint64_t value, char base = 'b', bool sized = true);
BoolPtr make_unary(UnaryOp op, BoolPtr operand);
BoolPtr make_binary(BinaryOp op, BoolPtr lhs, BoolPtr rhs);
BoolPtr make_past(BoolPtr operand, uint32_t depth = 1);
BoolPtr make_sampled(SampledFn fn, BoolPtr operand);
BoolPtr make_cond(BoolPtr cond, BoolPtr then_expr, BoolPtr else_expr);
BoolPtr make_concat(std::vector<BoolPtr> parts);

SeqPtr make_seq_bool(BoolPtr expr);
SeqPtr make_delay(uint32_t lo, uint32_t hi, SeqPtr left, SeqPtr right);
SeqPtr make_repeat(SeqPtr seq, uint32_t lo, uint32_t hi);
SeqPtr make_seq_and(SeqPtr lhs, SeqPtr rhs);
SeqPtr make_seq_or(SeqPtr lhs, SeqPtr rhs);

PropPtr make_implication(bool overlapped, SeqPtr antecedent, PropPtr consequent);
PropPtr make_prop_and(PropPtr lhs, PropPtr rhs);
PropPtr make_prop_or(PropPtr lhs, PropPtr rhs);
PropPtr make_prop_not(PropPtr operand);
PropPtr make_prop_seq(SeqPtr seq);

//===----------------------------------------------------------------------===//
// Structural equality. Labels are compared, source spans are not.
//===----------------------------------------------------------------------===//

bool equal(const BoolExpr &a, const BoolExpr &b);
bool equal(const SequenceExpr &a, const SequenceExpr &b);
bool equal(const PropertyExpr &a, const PropertyExpr &b);
bool equal(const Assertion &a, const Assertion &b);

/// Same as equal() but ignores the label; used where relabelling must not
/// matter.
bool equal_ignoring_label(const Assertion &a, const Assertion &b);

/// Every identifier referenced in clock, disable, and body, in first-occurrence
/// order, without duplicates.
std::vector<std::string> signals_of(const Assertion &a);

/// Identifiers of a boolean expression in first-occurrence order.
void collect_signals(const BoolExpr &e, std::vector<std::string> &out);

/// Nesting depth of a property tree, counting property, sequence, and boolean
/// levels.
std::size_t depth_of(const PropertyExpr &p);

/// Default structural limits.
inline constexpr std::size_t kDefaultMaxDepth = 64;
inline constexpr uint32_t kDefaultMaxDelay = 16;

} // namespace svaforge::sva
