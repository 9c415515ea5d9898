// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/common/overloaded.hpp"
#include "svaforge/rtl/design.hpp"

#include <algorithm>
#include <cctype>

namespace svaforge::rtl {

const Port *DesignUnit::port(std::string_view n) const {
  for (const auto &p : ports)
    if (p.name == n)
      return &p;
  return nullptr;
}

std::optional<uint32_t> DesignUnit::width_of(std::string_view n) const {
  if (const Port *p = port(n))
    return p->width;
  for (const auto &net : nets)
    if (net.name == n)
      return net.width;
  return std::nullopt;
}

std::vector<trace::Signal> DesignUnit::signals() const {
  std::vector<trace::Signal> out;
  for (const auto &p : ports)
    out.push_back({p.name, p.width});
  for (const auto &n : nets)
    out.push_back({n.name, n.width});
  return out;
}

std::vector<std::string> DesignUnit::stimulus_inputs() const {
  std::vector<std::string> out;
  for (const auto &p : ports)
    if (p.dir == Direction::Input && p.name != clock)
      out.push_back(p.name);
  return out;
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool matches_reset(const std::string &name, const std::vector<std::string> &patterns) {
  std::string n = lower(name);
  return std::any_of(patterns.begin(), patterns.end(),
                     [&](const std::string &p) { return n.find(lower(p)) != std::string::npos; });
}

const IfStmt *top_if(const Stmt &s) {
  const Stmt *cur = &s;
  while (const auto *b = std::get_if<BlockStmt>(&cur->node)) {
    if (b->body.empty())
      return nullptr;
    cur = b->body.front().get();
  }
  return std::get_if<IfStmt>(&cur->node);
}

bool is_literal(const sva::BoolExpr &e, uint64_t v) {
  const auto *l = std::get_if<sva::Literal>(&e.node);
  return l && l->value == v;
}

// Recognizes `x`, `!x`, `~x`, `x == 0/1`, `x != 0/1`. Returns the signal and
// whether the condition is true when x is 1.
std::optional<std::pair<std::string, bool>> reset_condition(const sva::BoolExpr &e) {
  return std::visit(
      overloaded{
          [](const sva::Ident &n) -> std::optional<std::pair<std::string, bool>> {
            if (n.select)
              return std::nullopt;
            return std::make_pair(n.name, true);
          },
          [](const sva::Unary &u) -> std::optional<std::pair<std::string, bool>> {
            if (u.op == sva::UnaryOp::Negate)
              return std::nullopt;
            auto inner = reset_condition(*u.operand);
            if (!inner)
              return std::nullopt;
            return std::make_pair(inner->first, !inner->second);
          },
          [](const sva::Binary &b) -> std::optional<std::pair<std::string, bool>> {
            if (b.op != sva::BinaryOp::Eq && b.op != sva::BinaryOp::Ne)
              return std::nullopt;
            const auto *id = std::get_if<sva::Ident>(&b.lhs->node);
            if (!id || id->select)
              return std::nullopt;
            bool eq = b.op == sva::BinaryOp::Eq;
            if (is_literal(*b.rhs, 1))
              return std::make_pair(id->name, eq);
            if (is_literal(*b.rhs, 0))
              return std::make_pair(id->name, !eq);
            return std::nullopt;
          },
          [](const auto &) -> std::optional<std::pair<std::string, bool>> { return std::nullopt; },
      },
      e.node);
}

} // namespace

ClockReset detect_clock_reset(const DesignUnit &d, const std::vector<std::string> &reset_patterns) {
  ClockReset out;
  if (d.processes.empty()) {
    out.issue = "no-processes";
    return out;
  }
  std::string clock = d.processes.front().clock.signal;
  for (const auto &p : d.processes)
    if (p.clock.signal != clock) {
      out.issue = "multiple-clocks";
      return out;
    }
  out.clock = clock;

  auto usable = [&](const std::string &name) {
    const Port *p = d.port(name);
    return p && p->dir == Direction::Input && p->width == 1 && name != clock;
  };

  for (const auto &p : d.processes)
    if (p.async_reset && usable(p.async_reset->signal)) {
      out.reset = ResetInfo{p.async_reset->signal, p.async_reset->edge == sva::Edge::Posedge,
                            ResetKind::Async};
      return out;
    }
  for (const auto &p : d.processes) {
    const IfStmt *i = top_if(*p.body);
    if (!i)
      continue;
    auto cond = reset_condition(*i->cond);
    if (cond && usable(cond->first) && matches_reset(cond->first, reset_patterns)) {
      out.reset = ResetInfo{cond->first, cond->second, ResetKind::Sync};
      return out;
    }
  }
  return out;
}

CurateResult curate(const std::vector<DesignUnit> &designs) {
  CurateResult out;
  for (const auto &d : designs) {
    if (!d.clock)
      out.rejected.push_back({d.name, d.clock_issue == "multiple-clocks" ? "multiple-clocks" : "no-clock"});
    else if (!d.reset)
      out.rejected.push_back({d.name, "no-reset"});
    else
      out.kept.push_back(d);
  }
  return out;
}

} // namespace svaforge::rtl
