// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Random assertion generator shared by the unit and acceptance suites. Only
// shapes with a textual form are produced: a property-level Seq never wraps a
// bare sequence and/or, since that text reparses as a property and/or.

#include "svaforge/sva/ast.hpp"

#include <random>
#include <string>
#include <vector>

namespace svaforge::testing {

struct AstGenOptions {
  std::vector<std::string> signals{"a", "b", "c", "d_q", "req", "gnt"};
  bool temporal = true;     // allow ##, [*], and, or in sequences
  bool sampled = true;      // allow $past/$rose/$fell/$stable
  bool selects = true;      // allow bit/part selects and wide literals
  bool bool_ops_full = true; // arithmetic/relational, not just logical
  int max_depth = 4;
};

class AstGen {
public:
  explicit AstGen(uint64_t seed, AstGenOptions opts = {}) : rng_(seed), opts_(std::move(opts)) {}

  sva::Assertion assertion() {
    sva::Assertion a;
    if (coin(0.5))
      a.label = "p" + std::to_string(pick(0, 99));
    a.clock.edge = coin(0.8) ? sva::Edge::Posedge : sva::Edge::Negedge;
    a.clock.signal = coin(0.5) ? "clk" : "i_clk";
    if (coin(0.4))
      a.disable = boolean(1);
    a.body = property(opts_.max_depth);
    return a;
  }

  sva::PropPtr property(int depth) {
    int k = depth <= 0 ? 0 : pick(0, 5);
    switch (k) {
    case 1:
    case 2:
      return sva::make_implication(coin(0.5), sequence(depth - 1), property(depth - 1));
    case 3:
      return sva::make_prop_and(property(depth - 1), property(depth - 1));
    case 4:
      return sva::make_prop_or(property(depth - 1), property(depth - 1));
    case 5:
      return sva::make_prop_not(property(depth - 1));
    default:
      return sva::make_prop_seq(top_sequence(depth - 1));
    }
  }

  // A sequence whose root is not and/or.
  sva::SeqPtr top_sequence(int depth) {
    for (;;) {
      sva::SeqPtr s = sequence(depth);
      if (!std::holds_alternative<sva::SeqAnd>(s->node) && !std::holds_alternative<sva::SeqOr>(s->node))
        return s;
    }
  }

  sva::SeqPtr sequence(int depth) {
    if (depth <= 0 || !opts_.temporal)
      return sva::make_seq_bool(boolean(depth));
    switch (pick(0, 5)) {
    case 1: {
      uint32_t lo = static_cast<uint32_t>(pick(0, 3));
      uint32_t hi = coin(0.6) ? lo : lo + static_cast<uint32_t>(pick(1, 2));
      sva::SeqPtr left = coin(0.75) ? sequence(depth - 1) : nullptr;
      return sva::make_delay(lo, hi, left, sequence(depth - 1));
    }
    case 2: {
      uint32_t lo = static_cast<uint32_t>(pick(1, 3));
      uint32_t hi = coin(0.6) ? lo : lo + static_cast<uint32_t>(pick(1, 2));
      return sva::make_repeat(sequence(depth - 1), lo, hi);
    }
    case 3:
      return sva::make_seq_and(sequence(depth - 1), sequence(depth - 1));
    case 4:
      return sva::make_seq_or(sequence(depth - 1), sequence(depth - 1));
    default:
      return sva::make_seq_bool(boolean(depth));
    }
  }

  sva::BoolPtr boolean(int depth) {
    int k = depth <= 0 ? 0 : pick(0, 6);
    switch (k) {
    case 1:
    case 2: {
      static const sva::BinaryOp logical[] = {sva::BinaryOp::LogicalAnd, sva::BinaryOp::LogicalOr};
      static const sva::BinaryOp all[] = {
          sva::BinaryOp::LogicalAnd, sva::BinaryOp::LogicalOr, sva::BinaryOp::BitAnd,
          sva::BinaryOp::BitOr,      sva::BinaryOp::BitXor,    sva::BinaryOp::Eq,
          sva::BinaryOp::Ne,         sva::BinaryOp::Lt,        sva::BinaryOp::Le,
          sva::BinaryOp::Gt,         sva::BinaryOp::Ge,        sva::BinaryOp::Add,
          sva::BinaryOp::Sub,        sva::BinaryOp::Shl,       sva::BinaryOp::Shr};
      sva::BinaryOp op = opts_.bool_ops_full ? all[pick(0, 14)] : logical[pick(0, 1)];
      return sva::make_binary(op, boolean(depth - 1), boolean(depth - 1));
    }
    case 3: {
      if (!opts_.bool_ops_full)
        return sva::make_unary(sva::UnaryOp::LogicalNot, boolean(depth - 1));
      static const sva::UnaryOp ops[] = {sva::UnaryOp::LogicalNot, sva::UnaryOp::BitwiseNot,
                                         sva::UnaryOp::Negate};
      return sva::make_unary(ops[pick(0, 2)], boolean(depth - 1));
    }
    case 4:
      if (opts_.sampled)
        return sva::make_past(boolean(depth - 1), static_cast<uint32_t>(pick(1, 3)));
      return leaf();
    case 5:
      if (opts_.sampled) {
        static const sva::SampledFn fns[] = {sva::SampledFn::Rose, sva::SampledFn::Fell,
                                             sva::SampledFn::Stable};
        return sva::make_sampled(fns[pick(0, 2)], boolean(depth - 1));
      }
      return leaf();
    default:
      return leaf();
    }
  }

  sva::BoolPtr leaf() {
    if (coin(0.7)) {
      const std::string &name = opts_.signals[static_cast<std::size_t>(pick(0, static_cast<int>(opts_.signals.size()) - 1))];
      if (opts_.selects && coin(0.15)) {
        sva::Select s;
        s.msb = static_cast<uint32_t>(pick(0, 7));
        s.part = coin(0.5);
        s.lsb = s.part ? static_cast<uint32_t>(pick(0, static_cast<int>(s.msb))) : s.msb;
        return sva::make_ident(name, s);
      }
      return sva::make_ident(name);
    }
    if (!opts_.selects)
      return sva::make_literal(1, static_cast<uint64_t>(pick(0, 1)), 'b', true);
    switch (pick(0, 3)) {
    case 0:
      return sva::make_literal(32, static_cast<uint64_t>(pick(0, 20)), 'd', false);
    case 1: {
      uint32_t w = static_cast<uint32_t>(pick(1, 8));
      return sva::make_literal(w, static_cast<uint64_t>(pick(0, (1 << w) - 1)), 'h', true);
    }
    case 2: {
      uint32_t w = static_cast<uint32_t>(pick(1, 8));
      return sva::make_literal(w, static_cast<uint64_t>(pick(0, (1 << w) - 1)), 'd', true);
    }
    default:
      return sva::make_literal(1, static_cast<uint64_t>(pick(0, 1)), 'b', true);
    }
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

private:
  std::mt19937_64 rng_;
  AstGenOptions opts_;
};

} // namespace svaforge::testing
