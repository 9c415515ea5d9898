// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/sva/printer.hpp"

#include "svaforge/common/overloaded.hpp"

#include <string_view>

namespace svaforge::sva {

namespace {

// Binding strength; larger binds tighter. Boolean levels sit above the
// temporal ones so that a boolean operand never needs parentheses inside a
// sequence unless its own operator requires them.
enum Prec : int {
  kImpl = 1,
  kOr = 2,
  kAnd = 3,
  kNot = 4,
  kDelay = 5,
  kRepeat = 6,
  kCond = 10,
  kBoolBase = 10, // + Verilog binary level 1..9
  kUnary = 30,
  kAtom = 40,
};

int binary_level(BinaryOp op) {
  switch (op) {
  case BinaryOp::LogicalOr: return 1;
  case BinaryOp::LogicalAnd: return 2;
  case BinaryOp::BitOr: return 3;
  case BinaryOp::BitXor: return 4;
  case BinaryOp::BitAnd: return 5;
  case BinaryOp::Eq:
  case BinaryOp::Ne: return 6;
  case BinaryOp::Lt:
  case BinaryOp::Le:
  case BinaryOp::Gt:
  case BinaryOp::Ge: return 7;
  case BinaryOp::Shl:
  case BinaryOp::Shr: return 8;
  case BinaryOp::Add:
  case BinaryOp::Sub: return 9;
  }
  return 9;
}

std::string_view binary_text(BinaryOp op) {
  switch (op) {
  case BinaryOp::LogicalAnd: return "&&";
  case BinaryOp::LogicalOr: return "||";
  case BinaryOp::BitAnd: return "&";
  case BinaryOp::BitOr: return "|";
  case BinaryOp::BitXor: return "^";
  case BinaryOp::Eq: return "==";
  case BinaryOp::Ne: return "!=";
  case BinaryOp::Lt: return "<";
  case BinaryOp::Le: return "<=";
  case BinaryOp::Gt: return ">";
  case BinaryOp::Ge: return ">=";
  case BinaryOp::Add: return "+";
  case BinaryOp::Sub: return "-";
  case BinaryOp::Shl: return "<<";
  case BinaryOp::Shr: return ">>";
  }
  return "?";
}

std::string literal_text(const Literal &l) {
  if (!l.sized)
    return std::to_string(l.value);
  std::string digits;
  unsigned radix = l.base == 'b' ? 2 : l.base == 'o' ? 8 : l.base == 'h' ? 16 : 10;
  uint64_t v = l.value;
  if (v == 0)
    digits = "0";
  while (v != 0) {
    digits.insert(digits.begin(), "0123456789abcdef"[v % radix]);
    v /= radix;
  }
  return std::to_string(l.width) + "'" + l.base + digits;
}

int bool_prec(const BoolExpr &e) {
  return std::visit(overloaded{
                        [](const Binary &b) { return kBoolBase + binary_level(b.op); },
                        [](const Unary &) { return static_cast<int>(kUnary); },
                        [](const Cond &) { return static_cast<int>(kCond); },
                        [](const auto &) { return static_cast<int>(kAtom); },
                    },
                    e.node);
}

class Printer {
public:
  std::string out;

  void wrap_if(bool paren, auto &&emit) {
    if (paren)
      out += '(';
    emit();
    if (paren)
      out += ')';
  }

  void boolean(const BoolExpr &e, int min_prec) {
    wrap_if(bool_prec(e) < min_prec, [&] { boolean_body(e); });
  }

  void boolean_body(const BoolExpr &e) {
    std::visit(overloaded{
                   [&](const Ident &n) {
                     out += n.name;
                     if (n.select) {
                       out += '[' + std::to_string(n.select->msb);
                       if (n.select->part)
                         out += ':' + std::to_string(n.select->lsb);
                       out += ']';
                     }
                   },
                   [&](const Literal &n) { out += literal_text(n); },
                   [&](const Unary &n) {
                     out += n.op == UnaryOp::LogicalNot   ? "!"
                            : n.op == UnaryOp::BitwiseNot ? "~"
                                                          : "-";
                     boolean(*n.operand, kUnary);
                   },
                   [&](const Binary &n) {
                     int level = kBoolBase + binary_level(n.op);
                     boolean(*n.lhs, level);
                     out += ' ';
                     out += binary_text(n.op);
                     out += ' ';
                     boolean(*n.rhs, level + 1);
                   },
                   [&](const Past &n) {
                     out += "$past(";
                     boolean(*n.operand, 0);
                     if (n.depth != 1)
                       out += ", " + std::to_string(n.depth);
                     out += ')';
                   },
                   [&](const Sampled &n) {
                     out += n.fn == SampledFn::Rose   ? "$rose("
                            : n.fn == SampledFn::Fell ? "$fell("
                                                      : "$stable(";
                     boolean(*n.operand, 0);
                     out += ')';
                   },
                   [&](const Cond &n) {
                     boolean(*n.cond, kCond + 1);
                     out += " ? ";
                     boolean(*n.then_expr, kCond);
                     out += " : ";
                     boolean(*n.else_expr, kCond);
                   },
                   [&](const Concat &n) {
                     out += '{';
                     for (std::size_t i = 0; i < n.parts.size(); ++i) {
                       if (i)
                         out += ", ";
                       boolean(*n.parts[i], 0);
                     }
                     out += '}';
                   },
               },
               e.node);
  }

  static int seq_prec(const SequenceExpr &s) {
    return std::visit(overloaded{
                          [](const SeqBool &b) { return bool_prec(*b.expr); },
                          [](const SeqDelay &) { return static_cast<int>(kDelay); },
                          [](const SeqRepeat &) { return static_cast<int>(kRepeat); },
                          [](const SeqAnd &) { return static_cast<int>(kAnd); },
                          [](const SeqOr &) { return static_cast<int>(kOr); },
                      },
                      s.node);
  }

  void delay_range(uint32_t lo, uint32_t hi) {
    out += "##";
    if (lo == hi)
      out += std::to_string(lo);
    else
      out += '[' + std::to_string(lo) + ':' + std::to_string(hi) + ']';
  }

  void sequence(const SequenceExpr &s, int min_prec) {
    wrap_if(seq_prec(s) < min_prec, [&] { sequence_body(s); });
  }

  void sequence_body(const SequenceExpr &s) {
    std::visit(overloaded{
                   [&](const SeqBool &n) { boolean_body(*n.expr); },
                   [&](const SeqDelay &n) {
                     if (n.left) {
                       sequence(*n.left, kDelay);
                       out += ' ';
                     }
                     delay_range(n.lo, n.hi);
                     out += ' ';
                     sequence(*n.right, kRepeat);
                   },
                   [&](const SeqRepeat &n) {
                     // Only atoms and repeats print bare; anything else needs
                     // parentheses so the suffix applies to the whole operand.
                     int p = seq_prec(*n.seq);
                     sequence(*n.seq, p == kRepeat ? kRepeat : kAtom);
                     out += "[*" + std::to_string(n.lo);
                     if (n.hi != n.lo)
                       out += ':' + std::to_string(n.hi);
                     out += ']';
                   },
                   [&](const SeqAnd &n) {
                     sequence(*n.lhs, kAnd);
                     out += " and ";
                     sequence(*n.rhs, kNot);
                   },
                   [&](const SeqOr &n) {
                     sequence(*n.lhs, kOr);
                     out += " or ";
                     sequence(*n.rhs, kAnd);
                   },
               },
               s.node);
  }

  static int prop_prec(const PropertyExpr &p) {
    return std::visit(overloaded{
                          [](const PropImplication &) { return static_cast<int>(kImpl); },
                          [](const PropAnd &) { return static_cast<int>(kAnd); },
                          [](const PropOr &) { return static_cast<int>(kOr); },
                          [](const PropNot &) { return static_cast<int>(kNot); },
                          [](const PropSeq &s) { return seq_prec(*s.seq); },
                      },
                      p.node);
  }

  void property(const PropertyExpr &p, int min_prec) {
    wrap_if(prop_prec(p) < min_prec, [&] { property_body(p); });
  }

  void property_body(const PropertyExpr &p) {
    std::visit(overloaded{
                   [&](const PropImplication &n) {
                     out += '(';
                     sequence(*n.antecedent, 0);
                     out += n.overlapped ? ") |-> (" : ") |=> (";
                     property(*n.consequent, 0);
                     out += ')';
                   },
                   [&](const PropAnd &n) {
                     property(*n.lhs, kAnd);
                     out += " and ";
                     property(*n.rhs, kNot);
                   },
                   [&](const PropOr &n) {
                     property(*n.lhs, kOr);
                     out += " or ";
                     property(*n.rhs, kAnd);
                   },
                   [&](const PropNot &n) {
                     out += "not ";
                     property(*n.operand, kNot);
                   },
                   [&](const PropSeq &n) { sequence_body(*n.seq); },
               },
               p.node);
  }
};

} // namespace

std::string print_bool(const BoolExpr &e) {
  Printer p;
  p.boolean(e, 0);
  return p.out;
}

std::string print_sequence(const SequenceExpr &s) {
  Printer p;
  p.sequence(s, 0);
  return p.out;
}

std::string print_property(const PropertyExpr &prop) {
  Printer p;
  p.property(prop, 0);
  return p.out;
}

std::string print_assertion(const Assertion &a) {
  Printer p;
  if (!a.label.empty())
    p.out += a.label + ": ";
  p.out += "assert property (@(";
  p.out += a.clock.edge == Edge::Posedge ? "posedge " : "negedge ";
  p.out += a.clock.signal + ") ";
  if (a.disable) {
    p.out += "disable iff (";
    p.boolean(*a.disable, 0);
    p.out += ") ";
  }
  p.property(*a.body, 0);
  p.out += ");";
  return p.out;
}

} // namespace svaforge::sva
