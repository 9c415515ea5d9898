// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/verify/formula.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/common/overloaded.hpp"

#include <algorithm>

namespace svaforge::verify {

using Id = FormulaStore::Id;

FormulaStore::FormulaStore(std::size_t max_nodes) : max_nodes_(max_nodes) {
  nodes_.push_back({K::False, 0, 0, {}});
  nodes_.push_back({K::True, 0, 0, {}});
}

Id FormulaStore::intern(Node n) {
  std::vector<uint32_t> key{static_cast<uint32_t>(n.k), n.a, n.b};
  key.insert(key.end(), n.kids.begin(), n.kids.end());
  auto it = index_.find(key);
  if (it != index_.end())
    return it->second;
  if (nodes_.size() >= max_nodes_)
    throw Error(ErrorKind::BoundExceeded,
                "residual formula store exceeded " + std::to_string(max_nodes_) + " nodes");
  Id id = static_cast<Id>(nodes_.size());
  nodes_.push_back(std::move(n));
  index_.emplace(std::move(key), id);
  return id;
}

Id FormulaStore::atom(uint32_t b, uint32_t offset) { return intern({K::Atom, b, offset, {}}); }

Id FormulaStore::combine(K k, std::vector<Id> xs) {
  const Id unit = k == K::And ? kTrue : kFalse;
  const Id zero = k == K::And ? kFalse : kTrue;
  std::vector<Id> flat;
  for (Id x : xs) {
    if (x == zero)
      return zero;
    if (x == unit)
      continue;
    if (nodes_[x].k == k)
      flat.insert(flat.end(), nodes_[x].kids.begin(), nodes_[x].kids.end());
    else
      flat.push_back(x);
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty())
    return unit;
  if (flat.size() == 1)
    return flat[0];
  return intern({k, 0, 0, std::move(flat)});
}

Id FormulaStore::conj(std::vector<Id> xs) { return combine(K::And, std::move(xs)); }
Id FormulaStore::disj(std::vector<Id> xs) { return combine(K::Or, std::move(xs)); }

Id FormulaStore::neg(Id x) {
  if (x == kTrue)
    return kFalse;
  if (x == kFalse)
    return kTrue;
  if (nodes_[x].k == K::Not)
    return nodes_[x].kids[0];
  return intern({K::Not, 0, 0, {x}});
}

Id FormulaStore::step(Id f, uint32_t pattern, const std::vector<bool> &truth) {
  if (f <= kTrue)
    return f;
  uint64_t key = (uint64_t{f} << 32) | pattern;
  auto it = step_cache_.find(key);
  if (it != step_cache_.end())
    return it->second;
  Id out = kFalse;
  // Copy: interning below may reallocate nodes_.
  const Node n = nodes_[f];
  switch (n.k) {
  case K::Atom:
    out = n.b == 0 ? (truth[n.a] ? kTrue : kFalse) : atom(n.a, n.b - 1);
    break;
  case K::And:
  case K::Or: {
    std::vector<Id> kids;
    kids.reserve(n.kids.size());
    for (Id c : n.kids)
      kids.push_back(step(c, pattern, truth));
    out = combine(n.k, std::move(kids));
    break;
  }
  case K::Not:
    out = neg(step(n.kids[0], pattern, truth));
    break;
  default:
    out = f;
  }
  step_cache_.emplace(key, out);
  return out;
}

void Unroller::add_end(Ends &ends, uint32_t end, Id cond) {
  if (cond == FormulaStore::kFalse)
    return;
  auto it = std::lower_bound(ends.begin(), ends.end(), end,
                             [](const std::pair<uint32_t, Id> &p, uint32_t e) { return p.first < e; });
  if (it != ends.end() && it->first == end)
    it->second = store_.disj({it->second, cond});
  else
    ends.insert(it, {end, cond});
}

Unroller::Ends Unroller::sequence(const sva::SequenceExpr &s, uint32_t offset) {
  Ends out;
  std::visit(overloaded{
                 [&](const sva::SeqBool &x) { add_end(out, offset, store_.atom(bool_index_(*x.expr), offset)); },
                 [&](const sva::SeqDelay &x) {
                   Ends starts{{offset, FormulaStore::kTrue}};
                   if (x.left)
                     starts = sequence(*x.left, offset);
                   for (auto [st, c] : starts)
                     for (uint32_t d = x.lo; d <= x.hi; ++d)
                       for (auto [e, w] : sequence(*x.right, st + d))
                         add_end(out, e, store_.conj({c, w}));
                 },
                 [&](const sva::SeqRepeat &x) {
                   Ends frontier{{offset, FormulaStore::kTrue}};
                   for (uint32_t i = 1; i <= x.hi && !frontier.empty(); ++i) {
                     Ends ends;
                     for (auto [st, c] : frontier)
                       for (auto [e, w] : sequence(*x.seq, st))
                         add_end(ends, e, store_.conj({c, w}));
                     if (i >= x.lo)
                       for (auto [e, c] : ends)
                         add_end(out, e, c);
                     frontier.clear();
                     for (auto [e, c] : ends)
                       frontier.emplace_back(e + 1, c);
                   }
                 },
                 [&](const sva::SeqAnd &x) {
                   Ends a = sequence(*x.lhs, offset);
                   Ends b = sequence(*x.rhs, offset);
                   for (auto [ea, ca] : a)
                     for (auto [eb, cb] : b)
                       add_end(out, std::max(ea, eb), store_.conj({ca, cb}));
                 },
                 [&](const sva::SeqOr &x) {
                   out = sequence(*x.lhs, offset);
                   for (auto [e, c] : sequence(*x.rhs, offset))
                     add_end(out, e, c);
                 },
             },
             s.node);
  return out;
}

Id Unroller::property(const sva::PropertyExpr &p, uint32_t offset) {
  return std::visit(overloaded{
                        [&](const sva::PropSeq &x) {
                          std::vector<Id> conds;
                          for (auto [e, c] : sequence(*x.seq, offset))
                            conds.push_back(c);
                          return store_.disj(std::move(conds));
                        },
                        [&](const sva::PropImplication &x) {
                          std::vector<Id> parts;
                          for (auto [e, c] : sequence(*x.antecedent, offset))
                            parts.push_back(store_.disj(
                                {store_.neg(c), property(*x.consequent, x.overlapped ? e : e + 1)}));
                          return store_.conj(std::move(parts));
                        },
                        [&](const sva::PropAnd &x) {
                          return store_.conj({property(*x.lhs, offset), property(*x.rhs, offset)});
                        },
                        [&](const sva::PropOr &x) {
                          return store_.disj({property(*x.lhs, offset), property(*x.rhs, offset)});
                        },
                        [&](const sva::PropNot &x) { return store_.neg(property(*x.operand, offset)); },
                    },
                    p.node);
}

} // namespace svaforge::verify
