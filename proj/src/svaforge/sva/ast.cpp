// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/sva/ast.hpp"

#include "svaforge/common/overloaded.hpp"

#include <algorithm>

namespace svaforge::sva {

using svaforge::overloaded;

namespace {

bool equal_ptr(const BoolPtr &a, const BoolPtr &b) {
  if (!a || !b)
    return !a && !b;
  return a == b || equal(*a, *b);
}

bool equal_ptr(const SeqPtr &a, const SeqPtr &b) {
  if (!a || !b)
    return !a && !b;
  return a == b || equal(*a, *b);
}

bool equal_ptr(const PropPtr &a, const PropPtr &b) {
  if (!a || !b)
    return !a && !b;
  return a == b || equal(*a, *b);
}

void push_unique(std::vector<std::string> &out, const std::string &name) {
  if (std::find(out.begin(), out.end(), name) == out.end())
    out.push_back(name);
}

void collect_seq(const SequenceExpr &s, std::vector<std::string> &out);

void collect_prop(const PropertyExpr &p, std::vector<std::string> &out) {
  std::visit(overloaded{
                 [&](const PropImplication &n) {
                   collect_seq(*n.antecedent, out);
                   collect_prop(*n.consequent, out);
                 },
                 [&](const PropAnd &n) {
                   collect_prop(*n.lhs, out);
                   collect_prop(*n.rhs, out);
                 },
                 [&](const PropOr &n) {
                   collect_prop(*n.lhs, out);
                   collect_prop(*n.rhs, out);
                 },
                 [&](const PropNot &n) { collect_prop(*n.operand, out); },
                 [&](const PropSeq &n) { collect_seq(*n.seq, out); },
             },
             p.node);
}

void collect_seq(const SequenceExpr &s, std::vector<std::string> &out) {
  std::visit(overloaded{
                 [&](const SeqBool &n) { collect_signals(*n.expr, out); },
                 [&](const SeqDelay &n) {
                   if (n.left)
                     collect_seq(*n.left, out);
                   collect_seq(*n.right, out);
                 },
                 [&](const SeqRepeat &n) { collect_seq(*n.seq, out); },
                 [&](const SeqAnd &n) {
                   collect_seq(*n.lhs, out);
                   collect_seq(*n.rhs, out);
                 },
                 [&](const SeqOr &n) {
                   collect_seq(*n.lhs, out);
                   collect_seq(*n.rhs, out);
                 },
             },
             s.node);
}

std::size_t depth_bool(const BoolExpr &e) {
  return 1 + std::visit(overloaded{
                            [](const Ident &) -> std::size_t { return 0; },
                            [](const Literal &) -> std::size_t { return 0; },
                            [](const Unary &n) { return depth_bool(*n.operand); },
                            [](const Binary &n) {
                              return std::max(depth_bool(*n.lhs), depth_bool(*n.rhs));
                            },
                            [](const Past &n) { return depth_bool(*n.operand); },
                            [](const Sampled &n) { return depth_bool(*n.operand); },
                            [](const Cond &n) {
                              return std::max({depth_bool(*n.cond), depth_bool(*n.then_expr),
                                               depth_bool(*n.else_expr)});
                            },
                            [](const Concat &n) {
                              std::size_t d = 0;
                              for (const auto &p : n.parts)
                                d = std::max(d, depth_bool(*p));
                              return d;
                            },
                        },
                        e.node);
}

std::size_t depth_seq(const SequenceExpr &s) {
  return 1 + std::visit(overloaded{
                            [](const SeqBool &n) { return depth_bool(*n.expr); },
                            [](const SeqDelay &n) {
                              return std::max(n.left ? depth_seq(*n.left) : 0,
                                              depth_seq(*n.right));
                            },
                            [](const SeqRepeat &n) { return depth_seq(*n.seq); },
                            [](const SeqAnd &n) {
                              return std::max(depth_seq(*n.lhs), depth_seq(*n.rhs));
                            },
                            [](const SeqOr &n) {
                              return std::max(depth_seq(*n.lhs), depth_seq(*n.rhs));
                            },
                        },
                        s.node);
}

} // namespace

BoolPtr make_ident(std::string name, std::optional<Select> select) {
  return std::make_shared<const BoolExpr>(BoolExpr{Ident{std::move(name), select}});
}

BoolPtr make_literal(uint32_t width, uint64_t value, char base, bool sized) {
  return std::make_shared<const BoolExpr>(BoolExpr{Literal{width, value, base, sized}});
}

BoolPtr make_unary(UnaryOp op, BoolPtr operand) {
  return std::make_shared<const BoolExpr>(BoolExpr{Unary{op, std::move(operand)}});
}

BoolPtr make_binary(BinaryOp op, BoolPtr lhs, BoolPtr rhs) {
  return std::make_shared<const BoolExpr>(BoolExpr{Binary{op, std::move(lhs), std::move(rhs)}});
}

BoolPtr make_past(BoolPtr operand, uint32_t depth) {
  return std::make_shared<const BoolExpr>(BoolExpr{Past{std::move(operand), depth}});
}

BoolPtr make_sampled(SampledFn fn, BoolPtr operand) {
  return std::make_shared<const BoolExpr>(BoolExpr{Sampled{fn, std::move(operand)}});
}

BoolPtr make_cond(BoolPtr cond, BoolPtr then_expr, BoolPtr else_expr) {
  return std::make_shared<const BoolExpr>(
      BoolExpr{Cond{std::move(cond), std::move(then_expr), std::move(else_expr)}});
}

BoolPtr make_concat(std::vector<BoolPtr> parts) {
  return std::make_shared<const BoolExpr>(BoolExpr{Concat{std::move(parts)}});
}

SeqPtr make_seq_bool(BoolPtr expr) {
  return std::make_shared<const SequenceExpr>(SequenceExpr{SeqBool{std::move(expr)}});
}

SeqPtr make_delay(uint32_t lo, uint32_t hi, SeqPtr left, SeqPtr right) {
  return std::make_shared<const SequenceExpr>(
      SequenceExpr{SeqDelay{lo, hi, std::move(left), std::move(right)}});
}

SeqPtr make_repeat(SeqPtr seq, uint32_t lo, uint32_t hi) {
  return std::make_shared<const SequenceExpr>(SequenceExpr{SeqRepeat{std::move(seq), lo, hi}});
}

SeqPtr make_seq_and(SeqPtr lhs, SeqPtr rhs) {
  return std::make_shared<const SequenceExpr>(SequenceExpr{SeqAnd{std::move(lhs), std::move(rhs)}});
}

SeqPtr make_seq_or(SeqPtr lhs, SeqPtr rhs) {
  return std::make_shared<const SequenceExpr>(SequenceExpr{SeqOr{std::move(lhs), std::move(rhs)}});
}

PropPtr make_implication(bool overlapped, SeqPtr antecedent, PropPtr consequent) {
  return std::make_shared<const PropertyExpr>(
      PropertyExpr{PropImplication{overlapped, std::move(antecedent), std::move(consequent)}});
}

PropPtr make_prop_and(PropPtr lhs, PropPtr rhs) {
  return std::make_shared<const PropertyExpr>(PropertyExpr{PropAnd{std::move(lhs), std::move(rhs)}});
}

PropPtr make_prop_or(PropPtr lhs, PropPtr rhs) {
  return std::make_shared<const PropertyExpr>(PropertyExpr{PropOr{std::move(lhs), std::move(rhs)}});
}

PropPtr make_prop_not(PropPtr operand) {
  return std::make_shared<const PropertyExpr>(PropertyExpr{PropNot{std::move(operand)}});
}

PropPtr make_prop_seq(SeqPtr seq) {
  return std::make_shared<const PropertyExpr>(PropertyExpr{PropSeq{std::move(seq)}});
}

bool equal(const BoolExpr &a, const BoolExpr &b) {
  if (a.node.index() != b.node.index())
    return false;
  return std::visit(
      overloaded{
          [&](const Ident &x) {
            const auto &y = std::get<Ident>(b.node);
            return x.name == y.name && x.select == y.select;
          },
          [&](const Literal &x) {
            const auto &y = std::get<Literal>(b.node);
            return x.width == y.width && x.value == y.value && x.sized == y.sized &&
                   (!x.sized || x.base == y.base);
          },
          [&](const Unary &x) {
            const auto &y = std::get<Unary>(b.node);
            return x.op == y.op && equal_ptr(x.operand, y.operand);
          },
          [&](const Binary &x) {
            const auto &y = std::get<Binary>(b.node);
            return x.op == y.op && equal_ptr(x.lhs, y.lhs) && equal_ptr(x.rhs, y.rhs);
          },
          [&](const Past &x) {
            const auto &y = std::get<Past>(b.node);
            return x.depth == y.depth && equal_ptr(x.operand, y.operand);
          },
          [&](const Sampled &x) {
            const auto &y = std::get<Sampled>(b.node);
            return x.fn == y.fn && equal_ptr(x.operand, y.operand);
          },
          [&](const Cond &x) {
            const auto &y = std::get<Cond>(b.node);
            return equal_ptr(x.cond, y.cond) && equal_ptr(x.then_expr, y.then_expr) &&
                   equal_ptr(x.else_expr, y.else_expr);
          },
          [&](const Concat &x) {
            const auto &y = std::get<Concat>(b.node);
            if (x.parts.size() != y.parts.size())
              return false;
            for (std::size_t i = 0; i < x.parts.size(); ++i)
              if (!equal_ptr(x.parts[i], y.parts[i]))
                return false;
            return true;
          },
      },
      a.node);
}

bool equal(const SequenceExpr &a, const SequenceExpr &b) {
  if (a.node.index() != b.node.index())
    return false;
  return std::visit(
      overloaded{
          [&](const SeqBool &x) { return equal_ptr(x.expr, std::get<SeqBool>(b.node).expr); },
          [&](const SeqDelay &x) {
            const auto &y = std::get<SeqDelay>(b.node);
            return x.lo == y.lo && x.hi == y.hi && equal_ptr(x.left, y.left) &&
                   equal_ptr(x.right, y.right);
          },
          [&](const SeqRepeat &x) {
            const auto &y = std::get<SeqRepeat>(b.node);
            return x.lo == y.lo && x.hi == y.hi && equal_ptr(x.seq, y.seq);
          },
          [&](const SeqAnd &x) {
            const auto &y = std::get<SeqAnd>(b.node);
            return equal_ptr(x.lhs, y.lhs) && equal_ptr(x.rhs, y.rhs);
          },
          [&](const SeqOr &x) {
            const auto &y = std::get<SeqOr>(b.node);
            return equal_ptr(x.lhs, y.lhs) && equal_ptr(x.rhs, y.rhs);
          },
      },
      a.node);
}

bool equal(const PropertyExpr &a, const PropertyExpr &b) {
  if (a.node.index() != b.node.index())
    return false;
  return std::visit(
      overloaded{
          [&](const PropImplication &x) {
            const auto &y = std::get<PropImplication>(b.node);
            return x.overlapped == y.overlapped && equal_ptr(x.antecedent, y.antecedent) &&
                   equal_ptr(x.consequent, y.consequent);
          },
          [&](const PropAnd &x) {
            const auto &y = std::get<PropAnd>(b.node);
            return equal_ptr(x.lhs, y.lhs) && equal_ptr(x.rhs, y.rhs);
          },
          [&](const PropOr &x) {
            const auto &y = std::get<PropOr>(b.node);
            return equal_ptr(x.lhs, y.lhs) && equal_ptr(x.rhs, y.rhs);
          },
          [&](const PropNot &x) { return equal_ptr(x.operand, std::get<PropNot>(b.node).operand); },
          [&](const PropSeq &x) { return equal_ptr(x.seq, std::get<PropSeq>(b.node).seq); },
      },
      a.node);
}

bool equal_ignoring_label(const Assertion &a, const Assertion &b) {
  return a.clock.edge == b.clock.edge && a.clock.signal == b.clock.signal &&
         equal_ptr(a.disable, b.disable) && equal_ptr(a.body, b.body);
}

bool equal(const Assertion &a, const Assertion &b) {
  return a.label == b.label && equal_ignoring_label(a, b);
}

void collect_signals(const BoolExpr &e, std::vector<std::string> &out) {
  std::visit(overloaded{
                 [&](const Ident &n) { push_unique(out, n.name); },
                 [](const Literal &) {},
                 [&](const Unary &n) { collect_signals(*n.operand, out); },
                 [&](const Binary &n) {
                   collect_signals(*n.lhs, out);
                   collect_signals(*n.rhs, out);
                 },
                 [&](const Past &n) { collect_signals(*n.operand, out); },
                 [&](const Sampled &n) { collect_signals(*n.operand, out); },
                 [&](const Cond &n) {
                   collect_signals(*n.cond, out);
                   collect_signals(*n.then_expr, out);
                   collect_signals(*n.else_expr, out);
                 },
                 [&](const Concat &n) {
                   for (const auto &p : n.parts)
                     collect_signals(*p, out);
                 },
             },
             e.node);
}

std::vector<std::string> signals_of(const Assertion &a) {
  std::vector<std::string> out;
  push_unique(out, a.clock.signal);
  if (a.disable)
    collect_signals(*a.disable, out);
  if (a.body)
    collect_prop(*a.body, out);
  return out;
}

std::size_t depth_of(const PropertyExpr &p) {
  return 1 + std::visit(overloaded{
                            [](const PropImplication &n) {
                              return std::max(depth_seq(*n.antecedent), depth_of(*n.consequent));
                            },
                            [](const PropAnd &n) {
                              return std::max(depth_of(*n.lhs), depth_of(*n.rhs));
                            },
                            [](const PropOr &n) {
                              return std::max(depth_of(*n.lhs), depth_of(*n.rhs));
                            },
                            [](const PropNot &n) { return depth_of(*n.operand); },
                            [](const PropSeq &n) { return depth_seq(*n.seq); },
                        },
                        p.node);
}

} // namespace svaforge::sva
