// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

// svaforge command-line driver. Talks to the library only through the C API.
//
// Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or
// configuration error, 3 aborted run.

#include "svaforge/svaforge.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAborted = 3;

struct Failure {
  int exit_code;
  std::string message;
};

struct Options {
  bool json = false;
  int verbosity = 0;
  std::optional<int64_t> seed;
  std::string config;
};

Options g_opts;

void log(int level, const std::string &msg) {
  if (g_opts.verbosity >= level)
    std::cerr << msg << "\n";
}

// Throws Failure for a non-OK status; `code` is the exit code to use.
void check(svf_status s, int code = kExitUsage) {
  if (s != SVF_OK)
    throw Failure{code, std::string(svf_status_name(s)) + ": " + svf_last_error()};
}

std::string take(char *s) {
  std::string out = s ? s : "";
  svf_string_free(s);
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Failure{kExitUsage, "cannot read " + path};
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

template <typename T, void (*Free)(T *)> struct Handle {
  T *p = nullptr;
  ~Handle() { Free(p); }
  T **out() { return &p; }
  T *get() const { return p; }
};

using Assertion = Handle<svf_assertion, svf_assertion_free>;
using Design = Handle<svf_design, svf_design_free>;
using Report = Handle<svf_report, svf_report_free>;
using Widths = Handle<svf_widths, svf_widths_free>;

void load_assertion(const std::string &path, Assertion &a) {
  std::string text = read_file(path);
  if (svf_assertion_parse(text.c_str(), a.out()) == SVF_OK)
    return;
  std::string strict_error = svf_last_error();
  // Also accept files holding a fenced block or surrounding prose.
  if (svf_assertion_extract(text.c_str(), a.out()) == SVF_OK)
    return;
  throw Failure{kExitUsage, path + ": " + strict_error};
}

void load_design(const std::string &path, const std::vector<std::string> &reset_patterns, Design &d) {
  std::string text = read_file(path);
  std::vector<const char *> pats;
  for (const auto &p : reset_patterns)
    pats.push_back(p.c_str());
  svf_status s = svf_design_parse(text.c_str(), reset_patterns.empty() ? nullptr : pats.data(), pats.size(), d.out());
  if (s != SVF_OK)
    throw Failure{kExitUsage, path + ": " + svf_status_name(s) + ": " + svf_last_error()};
}

template <typename T> std::vector<T> parse_list(const std::string &csv, const char *what) {
  std::vector<T> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0)
        throw std::invalid_argument(item);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception &) {
      throw Failure{kExitUsage, std::string("bad ") + what + " list: " + csv};
    }
  }
  return out;
}

void emit_json(const nlohmann::json &j) { std::cout << j.dump(2) << "\n"; }

//===----------------------------------------------------------------------===//
// synthesize
//===----------------------------------------------------------------------===//

struct SynthesizeArgs {
  std::string manifest;
  std::string workdir = "work";
  int from = 1;
  int to = 7;
};

int cmd_synthesize(const SynthesizeArgs &a) {
  if (g_opts.config.empty())
    throw Failure{kExitUsage, "a configuration file is required (--config or SVAFORGE_CONFIG)"};
  log(1, "synthesize: stages " + std::to_string(a.from) + ".." + std::to_string(a.to) + " into " + a.workdir);
  char *json = nullptr;
  char *table = nullptr;
  svf_status s = svf_pipeline_run(g_opts.config.c_str(), a.manifest.c_str(), a.workdir.c_str(), a.from, a.to,
                                  g_opts.seed.value_or(-1), &json, &table);
  if (s != SVF_OK) {
    bool usage = s == SVF_ERR_CONFIG || s == SVF_ERR_INVALID_ARGUMENT;
    check(s, usage ? kExitUsage : kExitAborted);
  }
  std::string j = take(json);
  std::string t = take(table);
  if (g_opts.json)
    std::cout << j << "\n";
  else
    std::cout << t;
  return kExitOk;
}

//===----------------------------------------------------------------------===//
// check
//===----------------------------------------------------------------------===//

struct CheckArgs {
  std::vector<std::string> equiv;
  std::vector<std::string> holds;
  std::string tautology;
  std::string design;
  std::string widths;
  std::string external;
  std::vector<std::string> reset_patterns;
  uint32_t bound = 0;
  uint64_t max_states = 0;
  uint32_t reset_ticks = 0;
  uint32_t width_limit = 0;
};

int cmd_check(const CheckArgs &a) {
  svf_bound bound = svf_bound_default();
  if (a.bound)
    bound.max_len = a.bound;
  if (a.max_states)
    bound.max_states = a.max_states;
  if (a.reset_ticks)
    bound.reset_ticks = a.reset_ticks;
  if (a.width_limit)
    bound.width_limit = a.width_limit;

  Widths widths;
  widths.p = svf_widths_new();
  if (!a.widths.empty())
    check(svf_widths_parse(widths.get(), a.widths.c_str()));

  if (!a.tautology.empty()) {
    Assertion x;
    load_assertion(a.tautology, x);
    int taut = 0;
    check(svf_check_tautology(x.get(), widths.get(), &bound, &taut));
    if (g_opts.json)
      emit_json({{"check", "tautology"}, {"tautology", taut != 0}, {"max_len", bound.max_len}});
    else
      std::cout << (taut ? "TAUTOLOGY" : "NOT_TAUTOLOGY") << " (max_len=" << bound.max_len << ")\n";
    return taut ? kExitOk : kExitNegative;
  }

  Report report;
  if (!a.equiv.empty()) {
    Assertion x, y;
    load_assertion(a.equiv[0], x);
    load_assertion(a.equiv[1], y);
    if (!a.external.empty()) {
      check(svf_check_external(x.get(), y.get(), nullptr, a.external.c_str(), report.out()));
    } else if (!a.design.empty()) {
      Design d;
      load_design(a.design, a.reset_patterns, d);
      check(svf_check_equivalent_design(x.get(), y.get(), d.get(), &bound, report.out()));
    } else {
      check(svf_check_equivalent_free(x.get(), y.get(), widths.get(), &bound, report.out()));
    }
  } else {
    Assertion x;
    Design d;
    load_assertion(a.holds[0], x);
    load_design(a.holds[1], a.reset_patterns, d);
    if (!a.external.empty())
      check(svf_check_external(x.get(), nullptr, d.get(), a.external.c_str(), report.out()));
    else
      check(svf_check_holds(x.get(), d.get(), &bound, report.out()));
  }
  char *out = nullptr;
  if (g_opts.json) {
    check(svf_report_json(report.get(), &out));
    std::cout << nlohmann::json::parse(take(out)).dump(2) << "\n";
  } else {
    check(svf_report_text(report.get(), &out));
    std::cout << take(out);
  }
  return svf_report_positive(report.get()) ? kExitOk : kExitNegative;
}

//===----------------------------------------------------------------------===//
// eval
//===----------------------------------------------------------------------===//

struct EvalArgs {
  std::string problems;
  std::string backend = "generator";
  uint32_t n = 32;
  std::string ks;
  std::string out;
  uint32_t bound = 0;
};

int cmd_eval(const EvalArgs &a) {
  if (g_opts.config.empty())
    throw Failure{kExitUsage, "a configuration file is required (--config or SVAFORGE_CONFIG)"};
  std::vector<uint32_t> ks;
  if (a.ks.empty()) {
    for (uint32_t k : {1u, 16u, 32u})
      if (k <= a.n)
        ks.push_back(k);
  } else {
    ks = parse_list<uint32_t>(a.ks, "k");
  }
  svf_bound bound = svf_bound_default();
  if (a.bound)
    bound.max_len = a.bound;
  log(1, "eval: n=" + std::to_string(a.n) + " backend=" + a.backend);
  char *report = nullptr;
  check(svf_eval(a.problems.c_str(), g_opts.config.c_str(), a.backend.c_str(), a.n, ks.data(), ks.size(), &bound,
                 &report));
  auto j = nlohmann::json::parse(take(report));
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::trunc);
    f << j.dump(2) << "\n";
    if (!f)
      throw Failure{kExitUsage, "cannot write " + a.out};
  }
  if (g_opts.json) {
    emit_json(j);
    return kExitOk;
  }
  std::ostringstream os;
  os << std::left << std::setw(12) << "backend";
  for (uint32_t k : ks)
    os << std::right << std::setw(10) << ("Func.@" + std::to_string(k));
  os << "\n" << std::left << std::setw(12) << a.backend << std::fixed << std::setprecision(4);
  for (uint32_t k : ks)
    os << std::right << std::setw(10) << j["func_at_k"][std::to_string(k)].get<double>();
  os << "\n";
  if (g_opts.verbosity > 0)
    for (const auto &p : j["problems"])
      os << "  " << p["id"].get<std::string>() << ": " << p["c"] << "/" << p["n"] << "\n";
  std::cout << os.str();
  return kExitOk;
}

//===----------------------------------------------------------------------===//
// stats
//===----------------------------------------------------------------------===//

struct StatsArgs {
  std::string diversity;
  std::vector<std::string> decontam;
  std::vector<std::string> counts;
  uint32_t ngram = 3;
  uint64_t pair_cap = 20000;
  std::string curve;
  std::string curve_out;
  uint32_t decontam_n = 13;
  uint32_t bound = 0;
};

int cmd_stats(const StatsArgs &a) {
  const uint64_t seed = static_cast<uint64_t>(g_opts.seed.value_or(0));
  if (!a.diversity.empty()) {
    double d = 0;
    check(svf_diversity(a.diversity.c_str(), a.ngram, a.pair_cap, seed, &d));
    std::string csv;
    if (!a.curve.empty()) {
      auto sizes = parse_list<size_t>(a.curve, "size");
      char *c = nullptr;
      check(svf_diversity_curve(a.diversity.c_str(), sizes.data(), sizes.size(), a.ngram, a.pair_cap, seed, &c));
      csv = take(c);
      if (!a.curve_out.empty()) {
        std::ofstream f(a.curve_out, std::ios::trunc);
        f << csv;
        if (!f)
          throw Failure{kExitUsage, "cannot write " + a.curve_out};
      }
    }
    if (g_opts.json) {
      nlohmann::json j = {{"diversity", d}, {"n_gram", a.ngram}, {"seed", seed}};
      if (!csv.empty())
        j["curve_csv"] = csv;
      emit_json(j);
    } else {
      std::cout << "diversity: " << std::setprecision(12) << d << " (" << a.ngram << "-gram, seed " << seed << ")\n";
      if (!csv.empty() && a.curve_out.empty())
        std::cout << csv;
    }
    return kExitOk;
  }
  if (!a.decontam.empty()) {
    char *r = nullptr;
    check(svf_decontaminate(a.decontam[0].c_str(), a.decontam[1].c_str(), a.decontam_n, &r));
    auto j = nlohmann::json::parse(take(r));
    if (g_opts.json) {
      emit_json(j);
    } else {
      std::cout << "kept: " << j["kept"].size() << "\ndropped: " << j["dropped"].size() << "\n";
      for (const auto &d : j["dropped"])
        std::cout << "  #" << d["index"] << ": \"" << d["ngram"].get<std::string>() << "\"\n";
    }
    return kExitOk;
  }
  Design d;
  load_design(a.counts[1], {}, d);
  svf_bound bound = svf_bound_default();
  if (a.bound)
    bound.max_len = a.bound;
  char *r = nullptr;
  check(svf_count_e2e(a.counts[0].c_str(), d.get(), &bound, &r));
  auto j = nlohmann::json::parse(take(r));
  if (g_opts.json) {
    emit_json(j);
  } else {
    std::cout << j["sva"] << " " << j["sync"] << " " << j["proven"] << "\n";
    log(1, "columns: sva sync proven; tautologies among proven: " + j["tautology"].dump());
  }
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"svaforge: assertion synthesis, checking and dataset statistics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g_opts.json, "emit one JSON document on stdout");
  app.add_flag("-v,--verbose", g_opts.verbosity, "log progress to stderr (repeatable)");
  app.add_option("--seed", g_opts.seed, "seed for randomized steps (default: config or 0)");
  app.add_option("--config", g_opts.config, "pipeline / backend configuration (JSON)")->envname("SVAFORGE_CONFIG");
  app.set_version_flag("--version", std::string(svf_version()));

  SynthesizeArgs syn;
  auto *s = app.add_subcommand("synthesize", "run the data pipeline over a design manifest");
  s->add_option("--manifest", syn.manifest, "JSON Lines manifest of designs")->required();
  s->add_option("--workdir", syn.workdir, "checkpoint directory (created if absent)");
  s->add_option("--from", syn.from, "first stage (1-7)");
  s->add_option("--to", syn.to, "last stage (1-7)");

  CheckArgs chk;
  auto *c = app.add_subcommand("check", "check equivalence, a property on a design, or tautology");
  auto *eq = c->add_option("--equiv", chk.equiv, "two assertion files")->expected(2);
  auto *ho = c->add_option("--holds", chk.holds, "assertion file and design file")->expected(2);
  auto *ta = c->add_option("--tautology", chk.tautology, "assertion file");
  eq->excludes(ho)->excludes(ta);
  ho->excludes(ta);
  c->add_option("--design", chk.design, "compare --equiv over the reachable traces of this design")->excludes(ho);
  c->add_option("--widths", chk.widths, "signal widths for free mode, e.g. a=1,b=4");
  c->add_option("--bound", chk.bound, "trace length bound (max_len)");
  c->add_option("--max-states", chk.max_states, "state budget");
  c->add_option("--reset-ticks", chk.reset_ticks, "cycles of forced reset before stimulus");
  c->add_option("--width-limit", chk.width_limit, "widest signal enumerated exhaustively");
  c->add_option("--reset-pattern", chk.reset_patterns, "reset name pattern (repeatable)");
  c->add_option("--external", chk.external, "external prover command using {file1} {file2} {design}");

  EvalArgs ev;
  auto *e = app.add_subcommand("eval", "sample translations and report Func.@k");
  e->add_option("--problems", ev.problems, "JSON Lines {id, design, nl, ground_truth}")->required();
  e->add_option("--backend", ev.backend, "backend role in the configuration");
  e->add_option("-n", ev.n, "samples per problem");
  e->add_option("-k", ev.ks, "comma-separated k values (default 1,16,32 up to n)");
  e->add_option("--out", ev.out, "write the full report here");
  e->add_option("--bound", ev.bound, "trace length bound (max_len)");

  StatsArgs st;
  auto *t = app.add_subcommand("stats", "corpus diversity, decontamination, end-to-end counts");
  auto *dv = t->add_option("--diversity", st.diversity, "corpus file");
  auto *dc = t->add_option("--decontam", st.decontam, "training file and benchmark file")->expected(2);
  auto *ct = t->add_option("--counts", st.counts, "responses file and design file")->expected(2);
  dv->excludes(dc)->excludes(ct);
  dc->excludes(ct);
  t->add_option("--ngram", st.ngram, "n for the diversity metric");
  t->add_option("--pair-cap", st.pair_cap, "maximum sampled document pairs");
  t->add_option("--curve", st.curve, "comma-separated corpus sizes for a diversity curve");
  t->add_option("--curve-out", st.curve_out, "write the curve CSV here");
  t->add_option("--decontam-n", st.decontam_n, "n-gram length for decontamination");
  t->add_option("--bound", st.bound, "trace length bound for --counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp &ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion &ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError &ex) {
    app.exit(ex);
    return kExitUsage;
  }

  try {
    if (*s)
      return cmd_synthesize(syn);
    if (*c) {
      if (chk.equiv.empty() && chk.holds.empty() && chk.tautology.empty())
        throw Failure{kExitUsage, "check needs one of --equiv, --holds, --tautology"};
      return cmd_check(chk);
    }
    if (*e)
      return cmd_eval(ev);
    if (st.diversity.empty() && st.decontam.empty() && st.counts.empty())
      throw Failure{kExitUsage, "stats needs one of --diversity, --decontam, --counts"};
    return cmd_stats(st);
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception &ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitAborted;
  }
}
