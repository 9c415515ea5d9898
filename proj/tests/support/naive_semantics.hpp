// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Reference semantics for assertions over 1-bit signals, written directly
// from the definitions and sharing no code with trace-eval or verify. Paths
// are enumerated one by one and never merged; the deciding horizon is found
// by a linear scan.

#include "svaforge/common/overloaded.hpp"
#include "svaforge/sva/ast.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svaforge::testing {

// Trace as name -> per-tick 0/1 values.
using BitTrace = std::map<std::string, std::vector<int>>;

enum class K3 { F, T, U };

inline K3 k_and(K3 a, K3 b) {
  if (a == K3::F || b == K3::F) return K3::F;
  if (a == K3::U || b == K3::U) return K3::U;
  return K3::T;
}
inline K3 k_or(K3 a, K3 b) {
  if (a == K3::T || b == K3::T) return K3::T;
  if (a == K3::U || b == K3::U) return K3::U;
  return K3::F;
}
inline K3 k_not(K3 a) { return a == K3::T ? K3::F : a == K3::F ? K3::T : K3::U; }

class NaiveSemantics {
public:
  NaiveSemantics(const BitTrace &t, std::size_t len) : t_(t), len_(len) {}

  // 0/1 value of a 1-bit boolean at tick `at`; ticks before zero read 0.
  int value(const sva::BoolExpr &e, long at) const {
    return std::visit(
        overloaded{
            [&](const sva::Ident &n) -> int {
              if (n.select) throw std::logic_error("select in 1-bit oracle");
              return at < 0 ? 0 : t_.at(n.name).at(static_cast<std::size_t>(at));
            },
            [&](const sva::Literal &l) -> int { return static_cast<int>(l.value & 1); },
            [&](const sva::Unary &u) -> int {
              if (u.op != sva::UnaryOp::LogicalNot) throw std::logic_error("op");
              return !value(*u.operand, at);
            },
            [&](const sva::Binary &b) -> int {
              int l = value(*b.lhs, at), r = value(*b.rhs, at);
              if (b.op == sva::BinaryOp::LogicalAnd) return l && r;
              if (b.op == sva::BinaryOp::LogicalOr) return l || r;
              throw std::logic_error("op");
            },
            [&](const sva::Past &p) -> int { return value(*p.operand, at - static_cast<long>(p.depth)); },
            [&](const sva::Sampled &s) -> int {
              int now = value(*s.operand, at), before = value(*s.operand, at - 1);
              if (s.fn == sva::SampledFn::Rose) return now == 1 && before == 0;
              if (s.fn == sva::SampledFn::Fell) return now == 0 && before == 1;
              return now == before;
            },
            [&](const auto &) -> int { throw std::logic_error("rtl-only node"); },
        },
        e.node);
  }

  struct Path {
    std::size_t end;
    K3 v;
  };

  // Every path of `s` starting at tick `at`, with atoms at ticks >= horizon unknown.
  std::vector<Path> paths(const sva::SequenceExpr &s, std::size_t at, std::size_t horizon) const {
    std::vector<Path> out;
    if (const auto *b = std::get_if<sva::SeqBool>(&s.node)) {
      K3 v = at >= horizon ? K3::U : value(*b->expr, static_cast<long>(at)) ? K3::T : K3::F;
      out.push_back({at, v});
    } else if (const auto *d = std::get_if<sva::SeqDelay>(&s.node)) {
      std::vector<Path> left{{at, K3::T}};
      if (d->left) left = paths(*d->left, at, horizon);
      for (const Path &l : left)
        for (uint32_t k = d->lo; k <= d->hi; ++k)
          for (const Path &r : paths(*d->right, l.end + k, horizon))
            out.push_back({r.end, k_and(l.v, r.v)});
    } else if (const auto *r = std::get_if<sva::SeqRepeat>(&s.node)) {
      for (uint32_t n = r->lo; n <= r->hi; ++n)
        for (const Path &p : repeat(*r->seq, n, at, horizon)) out.push_back(p);
    } else if (const auto *a = std::get_if<sva::SeqAnd>(&s.node)) {
      for (const Path &x : paths(*a->lhs, at, horizon))
        for (const Path &y : paths(*a->rhs, at, horizon))
          out.push_back({std::max(x.end, y.end), k_and(x.v, y.v)});
    } else if (const auto *o = std::get_if<sva::SeqOr>(&s.node)) {
      out = paths(*o->lhs, at, horizon);
      for (const Path &p : paths(*o->rhs, at, horizon)) out.push_back(p);
    }
    return out;
  }

  std::vector<Path> repeat(const sva::SequenceExpr &s, uint32_t n, std::size_t at, std::size_t horizon) const {
    if (n == 1) return paths(s, at, horizon);
    std::vector<Path> out;
    for (const Path &p : repeat(s, n - 1, at, horizon))
      for (const Path &q : paths(s, p.end + 1, horizon)) out.push_back({q.end, k_and(p.v, q.v)});
    return out;
  }

  K3 prop(const sva::PropertyExpr &p, std::size_t at, std::size_t horizon) const {
    if (const auto *s = std::get_if<sva::PropSeq>(&p.node)) {
      K3 v = K3::F;
      for (const Path &x : paths(*s->seq, at, horizon)) v = k_or(v, x.v);
      return v;
    }
    if (const auto *i = std::get_if<sva::PropImplication>(&p.node)) {
      K3 v = K3::T;
      for (const Path &x : paths(*i->antecedent, at, horizon))
        v = k_and(v, k_or(k_not(x.v), prop(*i->consequent, i->overlapped ? x.end : x.end + 1, horizon)));
      return v;
    }
    if (const auto *a = std::get_if<sva::PropAnd>(&p.node))
      return k_and(prop(*a->lhs, at, horizon), prop(*a->rhs, at, horizon));
    if (const auto *o = std::get_if<sva::PropOr>(&p.node))
      return k_or(prop(*o->lhs, at, horizon), prop(*o->rhs, at, horizon));
    return k_not(prop(*std::get<sva::PropNot>(p.node).operand, at, horizon));
  }

  // "PASS", "FAIL", or "UNDETERMINED".
  std::string verdict(const sva::Assertion &a) const {
    bool failed = false, pending = false;
    for (std::size_t start = 0; start < len_; ++start) {
      K3 r = K3::U;
      std::size_t last = len_ - 1;
      for (std::size_t h = start + 1; h <= len_; ++h) {
        r = prop(*a.body, start, h);
        if (r != K3::U) {
          last = h - 1;
          break;
        }
      }
      bool disabled = false;
      for (std::size_t k = start; k <= last && a.disable; ++k)
        disabled = disabled || value(*a.disable, static_cast<long>(k));
      if (disabled) continue;
      failed = failed || r == K3::F;
      pending = pending || r == K3::U;
    }
    return failed ? "FAIL" : pending ? "UNDETERMINED" : "PASS";
  }

private:
  const BitTrace &t_;
  std::size_t len_;
};

struct Disagreement {
  BitTrace trace;
  std::size_t length = 0;
};

// First trace in (length, lexicographic) order on which the two verdicts
// differ. Within a tick the first signal is the most significant digit.
inline std::optional<Disagreement> first_disagreement(const sva::Assertion &a1, const sva::Assertion &a2,
                                                      const std::vector<std::string> &signals,
                                                      std::size_t max_len) {
  const std::size_t n = signals.size();
  for (std::size_t len = 1; len <= max_len; ++len) {
    const uint64_t total = uint64_t{1} << (n * len);
    for (uint64_t code = 0; code < total; ++code) {
      BitTrace t;
      for (std::size_t i = 0; i < n; ++i) {
        auto &col = t[signals[i]];
        col.resize(len);
        for (std::size_t k = 0; k < len; ++k) {
          std::size_t bit = (len - 1 - k) * n + (n - 1 - i);
          col[k] = static_cast<int>((code >> bit) & 1);
        }
      }
      NaiveSemantics sem(t, len);
      if (sem.verdict(a1) != sem.verdict(a2))
        return Disagreement{t, len};
    }
  }
  return std::nullopt;
}

} // namespace svaforge::testing
