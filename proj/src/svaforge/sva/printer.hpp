// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/sva/ast.hpp"

#include <string>

namespace svaforge::sva {

/// Canonical single-line text. Every implication operand is parenthesized so
/// the printed form never depends on `and`/`or` vs `|->` precedence.
std::string print_assertion(const Assertion &a);

std::string print_property(const PropertyExpr &p);
std::string print_sequence(const SequenceExpr &s);
std::string print_bool(const BoolExpr &e);

} // namespace svaforge::sva
