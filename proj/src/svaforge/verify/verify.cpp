// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/verify/verify.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/common/overloaded.hpp"
#include "svaforge/trace/trace_json.hpp"
#include "svaforge/verify/formula.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace svaforge::verify {

const char *outcome_name(Outcome o) {
  switch (o) {
  case Outcome::Holds: return "HOLDS";
  case Outcome::Fails: return "FAILS";
  case Outcome::Equivalent: return "EQUIVALENT";
  case Outcome::Distinguished: return "DISTINGUISHED";
  }
  return "?";
}

namespace {

void add_unique(std::vector<std::string> &out, const std::vector<std::string> &names) {
  for (const auto &n : names)
    if (std::find(out.begin(), out.end(), n) == out.end())
      out.push_back(n);
}

void seq_signals(const sva::SequenceExpr &s, std::vector<std::string> &out);

void bool_signals(const sva::BoolExpr &e, std::vector<std::string> &out) {
  std::vector<std::string> names;
  sva::collect_signals(e, names);
  add_unique(out, names);
}

void seq_signals(const sva::SequenceExpr &s, std::vector<std::string> &out) {
  std::visit(overloaded{
                 [&](const sva::SeqBool &x) { bool_signals(*x.expr, out); },
                 [&](const sva::SeqDelay &x) {
                   if (x.left)
                     seq_signals(*x.left, out);
                   seq_signals(*x.right, out);
                 },
                 [&](const sva::SeqRepeat &x) { seq_signals(*x.seq, out); },
                 [&](const sva::SeqAnd &x) {
                   seq_signals(*x.lhs, out);
                   seq_signals(*x.rhs, out);
                 },
                 [&](const sva::SeqOr &x) {
                   seq_signals(*x.lhs, out);
                   seq_signals(*x.rhs, out);
                 },
             },
             s.node);
}

void prop_signals(const sva::PropertyExpr &p, std::vector<std::string> &out) {
  std::visit(overloaded{
                 [&](const sva::PropSeq &x) { seq_signals(*x.seq, out); },
                 [&](const sva::PropImplication &x) {
                   seq_signals(*x.antecedent, out);
                   prop_signals(*x.consequent, out);
                 },
                 [&](const sva::PropAnd &x) {
                   prop_signals(*x.lhs, out);
                   prop_signals(*x.rhs, out);
                 },
                 [&](const sva::PropOr &x) {
                   prop_signals(*x.lhs, out);
                   prop_signals(*x.rhs, out);
                 },
                 [&](const sva::PropNot &x) { prop_signals(*x.operand, out); },
             },
             p.node);
}

// Signals an assertion sees, with widths; indices are the sampler's signal
// numbering.
struct Space {
  std::vector<trace::Signal> signals;

  trace::Resolver resolver() const {
    return [this](const std::string &n) -> std::optional<trace::SignalRef> {
      for (std::size_t i = 0; i < signals.size(); ++i)
        if (signals[i].name == n)
          return trace::SignalRef{i, signals[i].width};
      return std::nullopt;
    };
  }
};

class WindowSampler : public trace::Sampler {
public:
  WindowSampler(const uint64_t *cur, const uint64_t *window, std::size_t nsig, uint32_t depth)
      : cur_(cur), window_(window), nsig_(nsig), depth_(depth) {}
  uint64_t sample(std::size_t signal, uint32_t back) const override {
    if (back == 0)
      return cur_[signal];
    return back <= depth_ ? window_[(back - 1) * nsig_ + signal] : 0;
  }

private:
  const uint64_t *cur_;
  const uint64_t *window_;
  std::size_t nsig_;
  uint32_t depth_;
};

// Attempt bookkeeping for one or more assertions. A monitor state is the set
// of live residuals plus a sticky failure flag; identical residuals evolve
// identically, so the set is deduplicated.
class Checker {
public:
  Checker(const std::vector<const sva::Assertion *> &as, const Space &space) : resolve_(space.resolver()) {
    Unroller u(store_, [&](const sva::BoolExpr &e) { return add_bool(e); });
    for (const auto *a : as) {
      Mon m;
      m.initial = u.property(*a->body);
      if (a->disable)
        m.disable = static_cast<int>(add_bool(*a->disable));
      mons_.push_back(m);
    }
    trans_.resize(mons_.size());
    intern_state(false, {});
  }

  uint32_t history() const {
    uint32_t h = 0;
    for (const auto &b : bools_)
      h = std::max(h, b.history());
    return h;
  }

  std::vector<uint32_t> start() const { return std::vector<uint32_t>(mons_.size(), 0); }

  void step(uint32_t *mons, const trace::Sampler &s) {
    std::vector<bool> truth(bools_.size());
    for (std::size_t i = 0; i < bools_.size(); ++i)
      truth[i] = bools_[i].eval(s) != 0;
    auto [pit, inserted] = patterns_.emplace(truth, static_cast<uint32_t>(patterns_.size()));
    uint32_t pattern = pit->second;
    for (std::size_t m = 0; m < mons_.size(); ++m) {
      uint64_t key = (uint64_t{mons[m]} << 32) | pattern;
      auto it = trans_[m].find(key);
      if (it != trans_[m].end()) {
        mons[m] = it->second;
        continue;
      }
      uint32_t next = advance(mons_[m], states_[mons[m]], pattern, truth);
      trans_[m].emplace(key, next);
      mons[m] = next;
    }
  }

  trace::Verdict verdict(uint32_t state) const {
    const MonState &s = states_[state];
    if (s.failed)
      return trace::Verdict::Fail;
    return s.live.empty() ? trace::Verdict::Pass : trace::Verdict::Undetermined;
  }

private:
  using Id = FormulaStore::Id;
  struct Mon {
    Id initial = FormulaStore::kTrue;
    int disable = -1;
  };
  struct MonState {
    bool failed = false;
    std::vector<Id> live;
  };

  uint32_t add_bool(const sva::BoolExpr &e) {
    bools_.emplace_back(e, resolve_);
    return static_cast<uint32_t>(bools_.size() - 1);
  }

  uint32_t intern_state(bool failed, std::vector<Id> live) {
    std::vector<uint32_t> key{failed ? 1u : 0u};
    key.insert(key.end(), live.begin(), live.end());
    auto it = state_index_.find(key);
    if (it != state_index_.end())
      return it->second;
    uint32_t id = static_cast<uint32_t>(states_.size());
    states_.push_back({failed, std::move(live)});
    state_index_.emplace(std::move(key), id);
    return id;
  }

  uint32_t advance(const Mon &m, MonState cur, uint32_t pattern, const std::vector<bool> &truth) {
    if (cur.failed)
      return intern_state(true, {});
    // An attempt is discarded once disable samples true before it resolves,
    // including on the tick it resolves.
    if (m.disable >= 0 && truth[static_cast<std::size_t>(m.disable)])
      return intern_state(false, {});
    std::vector<Id> live;
    cur.live.push_back(m.initial);
    for (Id r : cur.live) {
      Id n = store_.step(r, pattern, truth);
      if (n == FormulaStore::kFalse)
        return intern_state(true, {});
      if (n != FormulaStore::kTrue)
        live.push_back(n);
    }
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    return intern_state(false, std::move(live));
  }

  trace::Resolver resolve_;
  FormulaStore store_;
  std::vector<trace::CompiledBool> bools_;
  std::vector<Mon> mons_;
  std::vector<MonState> states_;
  std::unordered_map<std::vector<uint32_t>, uint32_t, boost::hash<std::vector<uint32_t>>> state_index_;
  std::unordered_map<std::vector<bool>, uint32_t> patterns_;
  std::vector<std::unordered_map<uint64_t, uint32_t>> trans_;
};

// Produces one tick of assertion-space values from a source state and an
// input choice. Choices are ordered so that increasing choice means
// lexicographically increasing input tuple.
class Source {
public:
  virtual ~Source() = default;
  virtual uint64_t choices() const = 0;
  virtual std::size_t state_size() const = 0;
  virtual void apply(const uint64_t *src, uint64_t choice, uint64_t *vals, uint64_t *next) const = 0;
};

// Decodes `choice` into values of the given widths, first one most significant.
void decode(uint64_t choice, const std::vector<uint32_t> &widths, uint64_t *out) {
  for (std::size_t i = widths.size(); i-- > 0;) {
    out[i] = choice & trace::width_mask(widths[i]);
    choice >>= widths[i];
  }
}

uint64_t choice_count(const std::vector<uint32_t> &widths, const Bound &b, const std::string &what) {
  uint32_t bits = 0;
  for (uint32_t w : widths)
    bits += w;
  if (bits >= 63 || (uint64_t{1} << bits) > b.max_states)
    throw Error(ErrorKind::BoundExceeded, what + " needs 2^" + std::to_string(bits) +
                                              " valuations per tick; max_states is " +
                                              std::to_string(b.max_states));
  return uint64_t{1} << bits;
}

class FreeSource : public Source {
public:
  FreeSource(const Space &space, const Bound &b) {
    for (const auto &s : space.signals)
      widths_.push_back(s.width);
    count_ = choice_count(widths_, b, "free enumeration");
  }
  uint64_t choices() const override { return count_; }
  std::size_t state_size() const override { return 0; }
  void apply(const uint64_t *, uint64_t choice, uint64_t *vals, uint64_t *) const override {
    decode(choice, widths_, vals);
  }

private:
  std::vector<uint32_t> widths_;
  uint64_t count_ = 1;
};

class DesignSource : public Source {
public:
  DesignSource(const rtl::DesignUnit &d, const Space &space, const Bound &b) : sim_(d) {
    const auto &inputs = sim_.input_indices();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (sim_.reset_index() && inputs[i] == *sim_.reset_index()) {
        reset_pos_ = i;
        continue;
      }
      uint32_t w = sim_.signals()[inputs[i]].width;
      if (w > b.width_limit)
        throw Error(ErrorKind::BoundExceeded, "input " + sim_.signals()[inputs[i]].name + " is " +
                                                  std::to_string(w) + " bits; width_limit is " +
                                                  std::to_string(b.width_limit));
      free_pos_.push_back(i);
      widths_.push_back(w);
    }
    count_ = choice_count(widths_, b, "design stimulus");
    for (const auto &s : space.signals) {
      auto it = std::find_if(sim_.signals().begin(), sim_.signals().end(),
                             [&](const trace::Signal &x) { return x.name == s.name; });
      proj_.push_back(it == sim_.signals().end() ? -1 : static_cast<int>(it - sim_.signals().begin()));
    }
  }

  uint64_t choices() const override { return count_; }
  std::size_t state_size() const override { return sim_.initial_state().size(); }

  void apply(const uint64_t *src, uint64_t choice, uint64_t *vals, uint64_t *next) const override {
    run(src, inputs_for(choice, false), false, vals, next);
  }

  // Reset preamble tick: reset active, other inputs 0.
  void apply_preamble(const uint64_t *src, uint64_t *vals, uint64_t *next) const {
    run(src, inputs_for(0, true), true, vals, next);
  }

  std::vector<uint64_t> inputs_for(uint64_t choice, bool in_reset) const {
    std::vector<uint64_t> in(sim_.input_indices().size(), 0);
    std::vector<uint64_t> vals(free_pos_.size());
    decode(in_reset ? 0 : choice, widths_, vals.data());
    for (std::size_t i = 0; i < free_pos_.size(); ++i)
      in[free_pos_[i]] = vals[i];
    if (reset_pos_)
      in[*reset_pos_] = in_reset ? sim_.reset_active_value() : sim_.reset_inactive_value();
    return in;
  }

  const rtl::Simulator &sim() const { return sim_; }

private:
  void run(const uint64_t *src, const std::vector<uint64_t> &in, bool in_reset, uint64_t *vals,
           uint64_t *next) const {
    rtl::Simulator::State s(src, src + state_size());
    std::vector<uint64_t> v = sim_.settle(s, in);
    for (std::size_t i = 0; i < proj_.size(); ++i)
      vals[i] = proj_[i] < 0 ? (in_reset ? 1 : 0) : v[static_cast<std::size_t>(proj_[i])];
    rtl::Simulator::State n = sim_.next(v);
    std::copy(n.begin(), n.end(), next);
  }

  rtl::Simulator sim_;
  std::vector<std::size_t> free_pos_;
  std::optional<std::size_t> reset_pos_;
  std::vector<uint32_t> widths_;
  std::vector<int> proj_; // space signal -> design signal, -1 for the reset alias
  uint64_t count_ = 1;
};

struct SearchResult {
  std::optional<std::vector<uint64_t>> witness; // choices, one per tick
  std::vector<std::vector<uint64_t>> samples;   // representative full-length paths
  uint64_t states = 0;
};

using Found = std::function<bool(const uint32_t *mons)>;

// Breadth-first search over (source state, history window, monitor states).
// Level k holds the distinct states reachable by k choices, each reached first
// by its lexicographically smallest choice sequence.
SearchResult search(const Source &src, Checker &checker, std::size_t nsig, std::vector<uint64_t> init,
                    const Bound &b, const Found &found, std::size_t sample_limit = 256) {
  const std::size_t S = src.state_size();
  const uint32_t H = checker.history();
  const std::size_t W = H * nsig;
  const std::size_t M = checker.start().size();
  const std::size_t K = S + W + M;

  struct Link {
    uint32_t parent;
    uint64_t choice;
  };
  std::vector<std::vector<Link>> links;
  std::vector<std::vector<uint64_t>> level{std::move(init)};
  SearchResult out;
  out.states = 1;

  auto path_to = [&](std::size_t depth, uint32_t idx) {
    std::vector<uint64_t> path(depth);
    for (std::size_t k = depth; k-- > 0;) {
      path[k] = links[k][idx].choice;
      idx = links[k][idx].parent;
    }
    return path;
  };

  std::vector<uint64_t> vals(nsig), key(K);
  std::vector<uint32_t> mons(M);
  for (uint32_t depth = 1; depth <= b.max_len; ++depth) {
    std::unordered_map<std::vector<uint64_t>, uint32_t, boost::hash<std::vector<uint64_t>>> seen;
    std::vector<std::vector<uint64_t>> next;
    std::vector<Link> next_links;
    for (uint32_t i = 0; i < level.size(); ++i) {
      const std::vector<uint64_t> &st = level[i];
      for (uint64_t c = 0; c < src.choices(); ++c) {
        src.apply(st.data(), c, vals.data(), key.data());
        WindowSampler sampler(vals.data(), st.data() + S, nsig, H);
        for (std::size_t m = 0; m < M; ++m)
          mons[m] = static_cast<uint32_t>(st[S + W + m]);
        checker.step(mons.data(), sampler);
        if (H > 0) {
          std::copy(vals.begin(), vals.end(), key.begin() + static_cast<std::ptrdiff_t>(S));
          std::copy(st.begin() + static_cast<std::ptrdiff_t>(S),
                    st.begin() + static_cast<std::ptrdiff_t>(S + W - nsig),
                    key.begin() + static_cast<std::ptrdiff_t>(S + nsig));
        }
        for (std::size_t m = 0; m < M; ++m)
          key[S + W + m] = mons[m];
        auto [it, inserted] = seen.emplace(key, static_cast<uint32_t>(next.size()));
        if (!inserted)
          continue;
        next.push_back(key);
        next_links.push_back({i, c});
        if (next.size() > b.max_states)
          throw Error(ErrorKind::BoundExceeded, "more than " + std::to_string(b.max_states) +
                                                    " states at length " + std::to_string(depth));
      }
    }
    links.push_back(std::move(next_links));
    level = std::move(next);
    out.states += level.size();
    for (uint32_t i = 0; i < level.size(); ++i) {
      for (std::size_t m = 0; m < M; ++m)
        mons[m] = static_cast<uint32_t>(level[i][S + W + m]);
      if (found(mons.data())) {
        out.witness = path_to(depth, i);
        return out;
      }
    }
  }
  for (uint32_t i = 0; i < level.size() && i < sample_limit; ++i)
    out.samples.push_back(path_to(b.max_len, i));
  return out;
}

uint64_t covered_traces(uint64_t choices, uint32_t max_len) {
  uint64_t total = 0, pow = 1;
  for (uint32_t k = 1; k <= max_len; ++k) {
    if (pow > UINT64_MAX / std::max<uint64_t>(choices, 1))
      return UINT64_MAX;
    pow *= choices;
    if (total > UINT64_MAX - pow)
      return UINT64_MAX;
    total += pow;
  }
  return total;
}

Space free_space(const std::vector<const sva::Assertion *> &as, const WidthTable &widths, const Bound &b) {
  std::vector<std::string> names;
  for (const auto *a : as)
    add_unique(names, data_signals(*a));
  Space sp;
  for (const auto &n : names) {
    auto it = widths.find(n);
    if (it == widths.end())
      throw Error(ErrorKind::UnknownSignal, "no width declared for signal '" + n + "'");
    if (it->second == 0 || it->second > b.width_limit)
      throw Error(ErrorKind::BoundExceeded, "signal '" + n + "' is " + std::to_string(it->second) +
                                                " bits; width_limit is " + std::to_string(b.width_limit));
    sp.signals.push_back({n, it->second});
  }
  return sp;
}

Space design_space(const std::vector<const sva::Assertion *> &as, const rtl::DesignUnit &d) {
  std::vector<std::string> names;
  for (const auto *a : as)
    add_unique(names, data_signals(*a));
  Space sp;
  for (const auto &n : names) {
    if (auto w = d.width_of(n))
      sp.signals.push_back({n, *w});
    else if (n == kResetAlias)
      sp.signals.push_back({n, 1});
    else
      throw Error(ErrorKind::UnknownSignal, "'" + n + "' is not a signal of design " + d.name);
  }
  return sp;
}

trace::Trace free_trace(const Space &sp, const std::vector<uint64_t> &choices) {
  std::vector<uint32_t> widths;
  for (const auto &s : sp.signals)
    widths.push_back(s.width);
  trace::Trace t(sp.signals);
  for (uint64_t c : choices) {
    std::vector<uint64_t> row(widths.size());
    decode(c, widths, row.data());
    t.add_step(std::move(row));
  }
  return t;
}

// Full design trace (every port and net), plus the reset alias column when the
// design does not declare one.
trace::Trace design_trace(const rtl::DesignUnit &d, const DesignSource &src, const Bound &b,
                          const std::vector<uint64_t> &choices) {
  std::vector<trace::Signal> sigs = src.sim().signals();
  bool alias = !d.width_of(kResetAlias);
  if (alias)
    sigs.push_back({kResetAlias, 1});
  trace::Trace t(sigs);
  rtl::Simulator::State s = src.sim().initial_state();
  std::size_t total = b.reset_ticks + choices.size();
  for (std::size_t k = 0; k < total; ++k) {
    bool in_reset = k < b.reset_ticks;
    std::vector<uint64_t> v = src.sim().settle(s, src.inputs_for(in_reset ? 0 : choices[k - b.reset_ticks], in_reset));
    s = src.sim().next(v);
    if (alias)
      v.push_back(in_reset ? 1 : 0);
    t.add_step(std::move(v));
  }
  return t;
}

std::vector<uint64_t> design_initial(const DesignSource &src, Checker &checker, std::size_t nsig,
                                     const Bound &b) {
  const std::size_t S = src.state_size();
  const uint32_t H = checker.history();
  std::vector<uint64_t> st(S + H * nsig, 0);
  std::vector<uint32_t> mons = checker.start();
  std::vector<uint64_t> vals(nsig), next(S);
  for (uint32_t k = 0; k < b.reset_ticks; ++k) {
    src.apply_preamble(st.data(), vals.data(), next.data());
    WindowSampler sampler(vals.data(), st.data() + S, nsig, H);
    checker.step(mons.data(), sampler);
    std::copy(next.begin(), next.end(), st.begin());
    if (H > 0) {
      std::copy_backward(st.begin() + static_cast<std::ptrdiff_t>(S),
                         st.end() - static_cast<std::ptrdiff_t>(nsig), st.end());
      std::copy(vals.begin(), vals.end(), st.begin() + static_cast<std::ptrdiff_t>(S));
    }
  }
  st.insert(st.end(), mons.begin(), mons.end());
  return st;
}

void check_bound(const Bound &b) {
  if (b.max_len < 1)
    throw Error(ErrorKind::InvalidArgument, "max_len must be at least 1");
}

} // namespace

std::vector<std::string> data_signals(const sva::Assertion &a) {
  std::vector<std::string> out;
  if (a.disable)
    bool_signals(*a.disable, out);
  prop_signals(*a.body, out);
  return out;
}

bool free_tautology(const sva::Assertion &a, const Bound &b, const WidthTable &widths) {
  check_bound(b);
  std::vector<const sva::Assertion *> as{&a};
  Space sp = free_space(as, widths, b);
  Checker checker(as, sp);
  FreeSource src(sp, b);
  std::vector<uint64_t> init(checker.history() * sp.signals.size(), 0);
  for (uint32_t m : checker.start())
    init.push_back(m);
  SearchResult r = search(src, checker, sp.signals.size(), std::move(init), b,
                          [&](const uint32_t *m) { return checker.verdict(m[0]) == trace::Verdict::Fail; }, 0);
  return !r.witness;
}

CheckReport holds_on_design(const sva::Assertion &a, const rtl::DesignUnit &d, const Bound &b) {
  check_bound(b);
  std::vector<const sva::Assertion *> as{&a};
  Space sp = design_space(as, d);
  Checker checker(as, sp);
  DesignSource src(d, sp, b);
  std::vector<uint64_t> init = design_initial(src, checker, sp.signals.size(), b);
  SearchResult r = search(src, checker, sp.signals.size(), std::move(init), b,
                          [&](const uint32_t *m) { return checker.verdict(m[0]) == trace::Verdict::Fail; });

  CheckReport rep;
  rep.mode = "design";
  rep.bound = b;
  rep.states = r.states;
  rep.enumerated = covered_traces(src.choices(), b.max_len);
  if (r.witness) {
    rep.outcome = Outcome::Fails;
    rep.witness = design_trace(d, src, b, *r.witness);
    rep.witness_verdict1 = trace::eval_assertion(a, *rep.witness).verdict;
    return rep;
  }
  rep.outcome = Outcome::Holds;
  for (const auto &path : r.samples) {
    trace::EvalResult e = trace::eval_assertion(a, design_trace(d, src, b, path));
    rep.attempts_vacuous += e.count(trace::AttemptStatus::Vacuous);
    rep.attempts_total += e.attempts.size();
  }
  WidthTable widths;
  for (const auto &s : sp.signals)
    widths[s.name] = s.width;
  try {
    rep.tautology = free_tautology(a, b, widths);
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::BoundExceeded)
      throw;
    rep.note = std::string("tautology check skipped: ") + e.what();
  }
  return rep;
}

CheckReport equivalent(const sva::Assertion &a1, const sva::Assertion &a2, const Bound &b, const Mode &mode) {
  check_bound(b);
  std::vector<const sva::Assertion *> as{&a1, &a2};
  auto differ = [](Checker &c) {
    return [&c](const uint32_t *m) { return c.verdict(m[0]) != c.verdict(m[1]); };
  };
  CheckReport rep;
  rep.bound = b;
  std::visit(overloaded{
                 [&](const FreeMode &f) {
                   Space sp = free_space(as, f.widths, b);
                   Checker checker(as, sp);
                   FreeSource src(sp, b);
                   std::vector<uint64_t> init(checker.history() * sp.signals.size(), 0);
                   for (uint32_t m : checker.start())
                     init.push_back(m);
                   SearchResult r = search(src, checker, sp.signals.size(), std::move(init), b, differ(checker), 0);
                   rep.mode = "free";
                   rep.states = r.states;
                   rep.enumerated = covered_traces(src.choices(), b.max_len);
                   if (r.witness)
                     rep.witness = free_trace(sp, *r.witness);
                 },
                 [&](const DesignMode &dm) {
                   if (!dm.design)
                     throw Error(ErrorKind::InvalidArgument, "design mode without a design");
                   Space sp = design_space(as, *dm.design);
                   Checker checker(as, sp);
                   DesignSource src(*dm.design, sp, b);
                   std::vector<uint64_t> init = design_initial(src, checker, sp.signals.size(), b);
                   SearchResult r = search(src, checker, sp.signals.size(), std::move(init), b, differ(checker), 0);
                   rep.mode = "design";
                   rep.states = r.states;
                   rep.enumerated = covered_traces(src.choices(), b.max_len);
                   if (r.witness)
                     rep.witness = design_trace(*dm.design, src, b, *r.witness);
                 },
             },
             mode);
  if (rep.witness) {
    rep.outcome = Outcome::Distinguished;
    rep.witness_verdict1 = trace::eval_assertion(a1, *rep.witness).verdict;
    rep.witness_verdict2 = trace::eval_assertion(a2, *rep.witness).verdict;
  } else {
    rep.outcome = Outcome::Equivalent;
  }
  return rep;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["outcome"] = outcome_name(outcome);
  j["tautology"] = tautology;
  j["mode"] = mode;
  j["bound"] = {{"max_len", bound.max_len},
                {"max_states", bound.max_states},
                {"reset_ticks", bound.reset_ticks},
                {"width_limit", bound.width_limit}};
  j["enumerated"] = enumerated;
  j["states"] = states;
  j["attempts_vacuous"] = attempts_vacuous;
  j["attempts_total"] = attempts_total;
  if (witness) {
    j["witness"] = trace::trace_to_json(*witness);
    if (witness_verdict1)
      j["witness_verdicts"].push_back(trace::verdict_name(*witness_verdict1));
    if (witness_verdict2)
      j["witness_verdicts"].push_back(trace::verdict_name(*witness_verdict2));
  }
  if (!note.empty())
    j["note"] = note;
  return j;
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << "outcome: " << outcome_name(outcome);
  if (tautology)
    os << " (TAUTOLOGY_FLAG)";
  os << "\nmode: " << mode << "\nbound: max_len=" << bound.max_len << " max_states=" << bound.max_states
     << " reset_ticks=" << bound.reset_ticks << " width_limit=" << bound.width_limit << "\n";
  if (mode != "external")
    os << "enumerated: " << enumerated << " traces, " << states << " states\n";
  if (attempts_total > 0)
    os << "vacuous attempts: " << attempts_vacuous << " of " << attempts_total << " (sampled traces)\n";
  if (witness) {
    os << "witness verdicts:";
    if (witness_verdict1)
      os << " " << trace::verdict_name(*witness_verdict1);
    if (witness_verdict2)
      os << " vs " << trace::verdict_name(*witness_verdict2);
    os << "\n" << trace::format_table(*witness);
  }
  if (!note.empty())
    os << "note: " << note << "\n";
  return os.str();
}

} // namespace svaforge::verify
