// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/common/error.hpp"
#include "svaforge/common/overloaded.hpp"
#include "svaforge/rtl/design.hpp"

#include <algorithm>
#include <set>

namespace svaforge::rtl {

namespace {

// Reads a settled valuation; RTL expressions never look back in time.
class ValuationSampler : public trace::Sampler {
public:
  explicit ValuationSampler(const std::vector<uint64_t> &v) : v_(v) {}
  uint64_t sample(std::size_t signal, uint32_t back) const override { return back ? 0 : v_[signal]; }

private:
  const std::vector<uint64_t> &v_;
};

void collect_targets(const Stmt &s, std::set<std::string> &out) {
  std::visit(overloaded{
                 [&](const NonblockingAssign &a) { out.insert(a.target); },
                 [&](const IfStmt &i) {
                   collect_targets(*i.then_branch, out);
                   if (i.else_branch)
                     collect_targets(*i.else_branch, out);
                 },
                 [&](const BlockStmt &b) {
                   for (const auto &x : b.body)
                     collect_targets(*x, out);
                 },
                 [&](const CaseStmt &c) {
                   for (const auto &it : c.items)
                     collect_targets(*it.body, out);
                 },
             },
             s.node);
}

} // namespace

struct Simulator::Proc {
  struct CStmt;
  struct CAssign {
    std::size_t slot;
    uint32_t width;
    trace::CompiledBool expr;
  };
  struct CIf {
    trace::CompiledBool cond;
    std::unique_ptr<CStmt> then_branch, else_branch;
  };
  struct CBlock {
    std::vector<std::unique_ptr<CStmt>> body;
  };
  struct CCase {
    struct Item {
      std::vector<trace::CompiledBool> eqs; // empty for default
      std::unique_ptr<CStmt> body;
    };
    std::vector<Item> items;
  };
  struct CStmt {
    std::variant<CAssign, CIf, CBlock, CCase> node;
  };

  std::unique_ptr<CStmt> body;

  static void run(const CStmt &s, const ValuationSampler &in, State &out) {
    std::visit(overloaded{
                   [&](const CAssign &a) { out[a.slot] = a.expr.eval(in, a.width) & trace::width_mask(a.width); },
                   [&](const CIf &i) {
                     if (i.cond.eval(in) != 0)
                       run(*i.then_branch, in, out);
                     else if (i.else_branch)
                       run(*i.else_branch, in, out);
                   },
                   [&](const CBlock &b) {
                     for (const auto &x : b.body)
                       run(*x, in, out);
                   },
                   [&](const CCase &c) {
                     for (const auto &it : c.items) {
                       bool hit = it.eqs.empty();
                       for (const auto &e : it.eqs)
                         hit = hit || e.eval(in) != 0;
                       if (hit) {
                         run(*it.body, in, out);
                         return;
                       }
                     }
                   },
               },
               s.node);
  }
};

class ProcCompiler {
public:
  ProcCompiler(const Simulator &sim, const trace::Resolver &resolve) : sim_(sim), resolve_(resolve) {}

  std::unique_ptr<Simulator::Proc::CStmt> compile(const Stmt &s) {
    using P = Simulator::Proc;
    auto out = std::make_unique<P::CStmt>();
    std::visit(overloaded{
                   [&](const NonblockingAssign &a) {
                     std::size_t idx = resolve_(a.target)->index;
                     out->node = P::CAssign{static_cast<std::size_t>(sim_.reg_slot_[idx]),
                                            sim_.signals_[idx].width, trace::CompiledBool(*a.expr, resolve_)};
                   },
                   [&](const IfStmt &i) {
                     P::CIf c{trace::CompiledBool(*i.cond, resolve_), compile(*i.then_branch), nullptr};
                     if (i.else_branch)
                       c.else_branch = compile(*i.else_branch);
                     out->node = std::move(c);
                   },
                   [&](const BlockStmt &b) {
                     P::CBlock c;
                     for (const auto &x : b.body)
                       c.body.push_back(compile(*x));
                     out->node = std::move(c);
                   },
                   [&](const CaseStmt &cs) {
                     P::CCase c;
                     for (const auto &it : cs.items) {
                       P::CCase::Item item;
                       for (const auto &l : it.labels)
                         item.eqs.emplace_back(*sva::make_binary(sva::BinaryOp::Eq, cs.subject, l), resolve_);
                       item.body = compile(*it.body);
                       c.items.push_back(std::move(item));
                     }
                     out->node = std::move(c);
                   },
               },
               s.node);
    return out;
  }

private:
  const Simulator &sim_;
  const trace::Resolver &resolve_;
};

Simulator::Simulator(const DesignUnit &d) : signals_(d.signals()) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < signals_.size(); ++i)
    index[signals_[i].name] = i;
  trace::Resolver resolve = [&](const std::string &n) -> std::optional<trace::SignalRef> {
    auto it = index.find(n);
    if (it == index.end())
      return std::nullopt;
    return trace::SignalRef{it->second, signals_[it->second].width};
  };

  for (const auto &n : d.stimulus_inputs())
    inputs_.push_back(index.at(n));
  if (d.clock)
    clock_ = index.at(*d.clock);
  if (d.reset) {
    reset_ = index.at(d.reset->signal);
    reset_active_ = d.reset->active_high ? 1 : 0;
  }

  std::set<std::string> targets;
  for (const auto &p : d.processes)
    collect_targets(*p.body, targets);
  reg_slot_.assign(signals_.size(), -1);
  for (std::size_t i = 0; i < signals_.size(); ++i)
    if (targets.count(signals_[i].name)) {
      reg_slot_[i] = static_cast<int>(regs_.size());
      regs_.push_back(i);
    }

  // Kahn's algorithm over assign-to-assign dependencies; ties broken by
  // source order so the result is deterministic.
  const std::size_t n = d.assigns.size();
  std::map<std::string, std::size_t> driver;
  for (std::size_t i = 0; i < n; ++i)
    driver[d.assigns[i].target] = i;
  std::vector<std::vector<std::size_t>> users(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> deps;
    sva::collect_signals(*d.assigns[i].expr, deps);
    for (const auto &s : deps) {
      auto it = driver.find(s);
      if (it != driver.end()) {
        users[it->second].push_back(i);
        ++pending[i];
      }
    }
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (pending[i] == 0)
      ready.insert(i);
  while (!ready.empty()) {
    std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    const auto &a = d.assigns[i];
    assigns_.emplace_back(index.at(a.target), trace::CompiledBool(*a.expr, resolve));
    for (std::size_t u : users[i])
      if (--pending[u] == 0)
        ready.insert(u);
  }
  if (assigns_.size() != n) {
    std::string names;
    for (std::size_t i = 0; i < n; ++i)
      if (pending[i] > 0)
        names += (names.empty() ? "" : ", ") + d.assigns[i].target;
    throw Error(ErrorKind::CombinationalCycle, "combinational cycle through: " + names);
  }

  ProcCompiler pc(*this, resolve);
  for (const auto &p : d.processes) {
    auto proc = std::make_shared<Proc>();
    proc->body = pc.compile(*p.body);
    procs_.push_back(std::move(proc));
  }
}

std::vector<uint64_t> Simulator::settle(const State &s, const std::vector<uint64_t> &inputs) const {
  if (inputs.size() != inputs_.size())
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(inputs_.size()) +
                                                " stimulus values, got " + std::to_string(inputs.size()));
  std::vector<uint64_t> v(signals_.size(), 0);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto &sig = signals_[inputs_[i]];
    if (inputs[i] & ~trace::width_mask(sig.width))
      throw Error(ErrorKind::WidthMismatch, "value " + std::to_string(inputs[i]) + " does not fit " +
                                                sig.name + " (" + std::to_string(sig.width) + " bits)");
    v[inputs_[i]] = inputs[i];
  }
  for (std::size_t r = 0; r < regs_.size(); ++r)
    v[regs_[r]] = s[r];
  ValuationSampler sampler(v);
  for (const auto &[idx, expr] : assigns_) {
    uint32_t w = signals_[idx].width;
    v[idx] = expr.eval(sampler, w) & trace::width_mask(w);
  }
  return v;
}

Simulator::State Simulator::next(const std::vector<uint64_t> &valuation) const {
  State out(regs_.size());
  for (std::size_t r = 0; r < regs_.size(); ++r)
    out[r] = valuation[regs_[r]];
  ValuationSampler sampler(valuation);
  for (const auto &p : procs_)
    Proc::run(*p->body, sampler, out);
  return out;
}

trace::Trace simulate(const DesignUnit &d, const std::vector<std::vector<uint64_t>> &stimulus,
                      uint32_t reset_ticks) {
  Simulator sim(d);
  std::optional<std::size_t> reset_pos;
  if (sim.reset_index())
    for (std::size_t i = 0; i < sim.input_indices().size(); ++i)
      if (sim.input_indices()[i] == *sim.reset_index())
        reset_pos = i;
  trace::Trace t(sim.signals());
  Simulator::State s = sim.initial_state();
  for (std::size_t k = 0; k < stimulus.size(); ++k) {
    std::vector<uint64_t> row = stimulus[k];
    if (reset_pos && k < reset_ticks && row.size() == sim.input_indices().size())
      row[*reset_pos] = sim.reset_active_value();
    std::vector<uint64_t> v = sim.settle(s, row);
    s = sim.next(v);
    t.add_step(std::move(v));
  }
  return t;
}

} // namespace svaforge::rtl
