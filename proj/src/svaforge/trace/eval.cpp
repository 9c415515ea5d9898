// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/trace/eval.hpp"

#include "svaforge/common/overloaded.hpp"

#include <algorithm>

namespace svaforge::trace {

const char *verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Pass: return "PASS";
  case Verdict::Fail: return "FAIL";
  case Verdict::Undetermined: return "UNDETERMINED";
  }
  return "?";
}

const char *attempt_status_name(AttemptStatus s) {
  switch (s) {
  case AttemptStatus::Satisfied: return "satisfied";
  case AttemptStatus::Failed: return "failed";
  case AttemptStatus::Pending: return "pending";
  case AttemptStatus::Disabled: return "disabled";
  case AttemptStatus::Vacuous: return "vacuous";
  }
  return "?";
}

std::size_t EvalResult::count(AttemptStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(attempts.begin(), attempts.end(), [s](const Attempt &a) { return a.status == s; }));
}

namespace {

enum class Tri { False, True, Pending };

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False)
    return Tri::False;
  if (a == Tri::Pending || b == Tri::Pending)
    return Tri::Pending;
  return Tri::True;
}

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True)
    return Tri::True;
  if (a == Tri::Pending || b == Tri::Pending)
    return Tri::Pending;
  return Tri::False;
}

Tri tri_not(Tri a) {
  return a == Tri::True ? Tri::False : a == Tri::False ? Tri::True : Tri::Pending;
}

// Match candidates of a sequence: end tick -> three-valued truth of "some
// path ends here". False entries are dropped.
using Match = std::vector<std::pair<std::size_t, Tri>>;

void add_end(Match &m, std::size_t end, Tri v) {
  if (v == Tri::False)
    return;
  auto it = std::lower_bound(m.begin(), m.end(), end,
                             [](const std::pair<std::size_t, Tri> &p, std::size_t e) { return p.first < e; });
  if (it != m.end() && it->first == end)
    it->second = tri_or(it->second, v);
  else
    m.insert(it, {end, v});
}

// Finite-horizon evaluator. Every query takes a horizon h <= trace length;
// booleans at ticks >= h are unknown and combine under Kleene logic, which is
// what makes results pending.
class Evaluator {
public:
  Evaluator(const sva::Assertion &a, const Trace &trace) : trace_(trace), resolve_(resolver_for(trace)) {
    body_ = prop(*a.body);
    if (a.disable)
      disable_ = add_bool(*a.disable);
    truth_.resize(bools_.size());
    for (std::size_t b = 0; b < bools_.size(); ++b) {
      truth_[b].resize(trace.length());
      for (std::size_t t = 0; t < trace.length(); ++t)
        truth_[b][t] = bools_[b].eval(TraceSampler(trace, t)) != 0;
    }
  }

  EvalResult run() const {
    EvalResult out;
    const std::size_t len = trace_.length();
    for (std::size_t t = 0; t < len; ++t) {
      Attempt at;
      at.start = t;
      // Results only become more defined as the horizon grows, so the
      // deciding horizon can be found by bisection.
      Tri result = eval_prop(body_, t, len);
      std::size_t h = len;
      if (result != Tri::Pending) {
        std::size_t lo = t + 1;
        while (lo < h) {
          std::size_t mid = lo + (h - lo) / 2;
          if (eval_prop(body_, t, mid) != Tri::Pending)
            h = mid;
          else
            lo = mid + 1;
        }
      }
      std::size_t last = h - 1;
      if (result != Tri::Pending)
        at.decided_at = last;
      bool disabled = false;
      if (disable_ >= 0)
        for (std::size_t k = t; k <= last && !disabled; ++k)
          disabled = truth_[static_cast<std::size_t>(disable_)][k];
      if (disabled)
        at.status = AttemptStatus::Disabled;
      else if (result == Tri::False)
        at.status = AttemptStatus::Failed;
      else if (result == Tri::Pending)
        at.status = AttemptStatus::Pending;
      else if (vacuous(t))
        at.status = AttemptStatus::Vacuous;
      else
        at.status = AttemptStatus::Satisfied;
      out.attempts.push_back(at);
    }
    if (out.count(AttemptStatus::Failed) > 0)
      out.verdict = Verdict::Fail;
    else if (out.count(AttemptStatus::Pending) > 0)
      out.verdict = Verdict::Undetermined;
    else
      out.verdict = Verdict::Pass;
    return out;
  }

private:
  struct SNode {
    enum class K { Bool, Delay, Repeat, And, Or } k;
    int b = -1;
    uint32_t lo = 0, hi = 0;
    int l = -1, r = -1;
  };
  struct PNode {
    enum class K { Seq, Impl, And, Or, Not } k;
    bool overlapped = true;
    int s = -1;
    int l = -1, r = -1;
  };

  int add_bool(const sva::BoolExpr &e) {
    bools_.emplace_back(e, resolve_);
    return static_cast<int>(bools_.size() - 1);
  }

  int seq(const sva::SequenceExpr &e) {
    SNode n{};
    std::visit(overloaded{
                   [&](const sva::SeqBool &x) {
                     n.k = SNode::K::Bool;
                     n.b = add_bool(*x.expr);
                   },
                   [&](const sva::SeqDelay &x) {
                     n.k = SNode::K::Delay;
                     n.lo = x.lo;
                     n.hi = x.hi;
                     n.l = x.left ? seq(*x.left) : -1;
                     n.r = seq(*x.right);
                   },
                   [&](const sva::SeqRepeat &x) {
                     n.k = SNode::K::Repeat;
                     n.lo = x.lo;
                     n.hi = x.hi;
                     n.l = seq(*x.seq);
                   },
                   [&](const sva::SeqAnd &x) {
                     n.k = SNode::K::And;
                     n.l = seq(*x.lhs);
                     n.r = seq(*x.rhs);
                   },
                   [&](const sva::SeqOr &x) {
                     n.k = SNode::K::Or;
                     n.l = seq(*x.lhs);
                     n.r = seq(*x.rhs);
                   },
               },
               e.node);
    seqs_.push_back(n);
    return static_cast<int>(seqs_.size() - 1);
  }

  int prop(const sva::PropertyExpr &e) {
    PNode n{};
    std::visit(overloaded{
                   [&](const sva::PropSeq &x) {
                     n.k = PNode::K::Seq;
                     n.s = seq(*x.seq);
                   },
                   [&](const sva::PropImplication &x) {
                     n.k = PNode::K::Impl;
                     n.overlapped = x.overlapped;
                     n.s = seq(*x.antecedent);
                     n.r = prop(*x.consequent);
                   },
                   [&](const sva::PropAnd &x) {
                     n.k = PNode::K::And;
                     n.l = prop(*x.lhs);
                     n.r = prop(*x.rhs);
                   },
                   [&](const sva::PropOr &x) {
                     n.k = PNode::K::Or;
                     n.l = prop(*x.lhs);
                     n.r = prop(*x.rhs);
                   },
                   [&](const sva::PropNot &x) {
                     n.k = PNode::K::Not;
                     n.l = prop(*x.operand);
                   },
               },
               e.node);
    props_.push_back(n);
    return static_cast<int>(props_.size() - 1);
  }

  Match match(int si, std::size_t t, std::size_t h) const {
    const SNode &n = seqs_[static_cast<std::size_t>(si)];
    Match m;
    switch (n.k) {
    case SNode::K::Bool:
      if (t >= h)
        add_end(m, t, Tri::Pending);
      else if (truth_[static_cast<std::size_t>(n.b)][t])
        add_end(m, t, Tri::True);
      return m;
    case SNode::K::Delay: {
      Match starts{{t, Tri::True}};
      if (n.l >= 0)
        starts = match(n.l, t, h);
      for (auto [s, v] : starts)
        for (uint32_t d = n.lo; d <= n.hi; ++d)
          for (auto [e, w] : match(n.r, s + d, h))
            add_end(m, e, tri_and(v, w));
      return m;
    }
    case SNode::K::Repeat: {
      Match frontier{{t, Tri::True}}; // start tick of the next iteration
      for (uint32_t i = 1; i <= n.hi && !frontier.empty(); ++i) {
        Match ends;
        for (auto [s, v] : frontier)
          for (auto [e, w] : match(n.l, s, h))
            add_end(ends, e, tri_and(v, w));
        if (i >= n.lo)
          for (auto [e, v] : ends)
            add_end(m, e, v);
        frontier.clear();
        for (auto [e, v] : ends)
          frontier.emplace_back(e + 1, v);
      }
      return m;
    }
    case SNode::K::And: {
      Match a = match(n.l, t, h);
      Match b = match(n.r, t, h);
      for (auto [x, v] : a)
        for (auto [y, w] : b)
          add_end(m, std::max(x, y), tri_and(v, w));
      return m;
    }
    case SNode::K::Or: {
      m = match(n.l, t, h);
      for (auto [e, v] : match(n.r, t, h))
        add_end(m, e, v);
      return m;
    }
    }
    return m;
  }

  Tri eval_prop(int pi, std::size_t t, std::size_t h) const {
    const PNode &n = props_[static_cast<std::size_t>(pi)];
    switch (n.k) {
    case PNode::K::Seq: {
      Tri acc = Tri::False;
      for (auto [e, v] : match(n.s, t, h))
        acc = tri_or(acc, v);
      return acc;
    }
    case PNode::K::Impl: {
      Tri acc = Tri::True;
      for (auto [e, v] : match(n.s, t, h)) {
        acc = tri_and(acc, tri_or(tri_not(v), eval_prop(n.r, n.overlapped ? e : e + 1, h)));
        if (acc == Tri::False)
          return acc;
      }
      return acc;
    }
    case PNode::K::And:
      return tri_and(eval_prop(n.l, t, h), eval_prop(n.r, t, h));
    case PNode::K::Or:
      return tri_or(eval_prop(n.l, t, h), eval_prop(n.r, t, h));
    case PNode::K::Not:
      return tri_not(eval_prop(n.l, t, h));
    }
    return Tri::Pending;
  }

  bool vacuous(std::size_t t) const {
    const PNode &n = props_[static_cast<std::size_t>(body_)];
    if (n.k != PNode::K::Impl)
      return false;
    return match(n.s, t, trace_.length()).empty();
  }

  const Trace &trace_;
  Resolver resolve_;
  std::vector<CompiledBool> bools_;
  std::vector<SNode> seqs_;
  std::vector<PNode> props_;
  std::vector<std::vector<bool>> truth_;
  int body_ = -1;
  int disable_ = -1;
};

} // namespace

EvalResult eval_assertion(const sva::Assertion &a, const Trace &trace) {
  if (trace.length() == 0)
    return {};
  return Evaluator(a, trace).run();
}

} // namespace svaforge::trace
