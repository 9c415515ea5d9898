// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Residual obligations of assertion attempts, as hash-consed formulas over
// atoms "boolean b holds `offset` ticks from now". Simplification is limited
// to constant folding, flattening, and deduplication, so a formula folds to a
// constant exactly when its Kleene value is decided.

#include "svaforge/sva/ast.hpp"

#include <boost/functional/hash.hpp>

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace svaforge::verify {

class FormulaStore {
public:
  using Id = uint32_t;
  static constexpr Id kFalse = 0;
  static constexpr Id kTrue = 1;

  explicit FormulaStore(std::size_t max_nodes = std::size_t{1} << 22);

  Id atom(uint32_t b, uint32_t offset);
  Id conj(std::vector<Id> xs);
  Id disj(std::vector<Id> xs);
  Id neg(Id x);

  /// One tick of progression: offset-0 atoms take their value from `truth`,
  /// the others move one tick closer. `pattern` identifies `truth` for
  /// caching; equal patterns must carry equal truth vectors.
  Id step(Id f, uint32_t pattern, const std::vector<bool> &truth);

  std::size_t size() const { return nodes_.size(); }

private:
  enum class K : uint32_t { False, True, Atom, And, Or, Not };
  struct Node {
    K k;
    uint32_t a = 0, b = 0; // atom: bool index, offset
    std::vector<Id> kids;
  };

  Id intern(Node n);
  Id combine(K k, std::vector<Id> xs);

  std::vector<Node> nodes_;
  std::unordered_map<std::vector<uint32_t>, Id, boost::hash<std::vector<uint32_t>>> index_;
  std::unordered_map<uint64_t, Id> step_cache_;
  std::size_t max_nodes_;
};

/// Unrolls an assertion body into a formula. `bool_index` maps each boolean
/// leaf to an atom index.
class Unroller {
public:
  using BoolIndex = std::function<uint32_t(const sva::BoolExpr &)>;
  Unroller(FormulaStore &store, BoolIndex bool_index) : store_(store), bool_index_(std::move(bool_index)) {}

  FormulaStore::Id property(const sva::PropertyExpr &p, uint32_t offset = 0);

private:
  using Ends = std::vector<std::pair<uint32_t, FormulaStore::Id>>;
  Ends sequence(const sva::SequenceExpr &s, uint32_t offset);
  void add_end(Ends &ends, uint32_t end, FormulaStore::Id cond);

  FormulaStore &store_;
  BoolIndex bool_index_;
};

} // namespace svaforge::verify
