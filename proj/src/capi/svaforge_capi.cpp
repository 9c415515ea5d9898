// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/svaforge.h"

#include "svaforge/common/error.hpp"
#include "svaforge/llm/backend.hpp"
#include "svaforge/llm/gateway.hpp"
#include "svaforge/llm/templates.hpp"
#include "svaforge/metrics/metrics.hpp"
#include "svaforge/pipeline/config.hpp"
#include "svaforge/pipeline/pipeline.hpp"
#include "svaforge/rtl/design.hpp"
#include "svaforge/sva/extract.hpp"
#include "svaforge/sva/parser.hpp"
#include "svaforge/sva/printer.hpp"
#include "svaforge/verify/external.hpp"
#include "svaforge/verify/verify.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace svaforge;
namespace fs = std::filesystem;

struct svf_assertion {
  sva::Assertion a;
};
struct svf_design {
  rtl::DesignUnit d;
};
struct svf_widths {
  verify::WidthTable w;
};
struct svf_report {
  verify::CheckReport r;
};

namespace {

thread_local std::string g_last_error;

svf_status status_for(ErrorKind k) {
  switch (k) {
  case ErrorKind::Parse:
    return SVF_ERR_PARSE;
  case ErrorKind::UnsupportedConstruct:
    return SVF_ERR_UNSUPPORTED;
  case ErrorKind::UnknownSignal:
    return SVF_ERR_UNKNOWN_SIGNAL;
  case ErrorKind::BoundExceeded:
    return SVF_ERR_BOUND;
  case ErrorKind::MultipleModules:
  case ErrorKind::MultipleDrivers:
  case ErrorKind::CombinationalCycle:
  case ErrorKind::WidthMismatch:
  case ErrorKind::Design:
    return SVF_ERR_DESIGN;
  case ErrorKind::Io:
    return SVF_ERR_IO;
  case ErrorKind::Config:
    return SVF_ERR_CONFIG;
  case ErrorKind::Checkpoint:
    return SVF_ERR_CHECKPOINT;
  case ErrorKind::Backend:
  case ErrorKind::MockKeyMissing:
  case ErrorKind::NoPropertiesParsed:
  case ErrorKind::EmptyTranslation:
    return SVF_ERR_BACKEND;
  case ErrorKind::ToolUnavailable:
  case ErrorKind::UnparseableToolOutput:
    return SVF_ERR_TOOL;
  case ErrorKind::InvalidArgument:
    return SVF_ERR_INVALID_ARGUMENT;
  }
  return SVF_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <typename F> svf_status guarded(F &&fn) {
  try {
    g_last_error.clear();
    fn();
    return SVF_OK;
  } catch (const Error &e) {
    g_last_error = std::string(error_kind_name(e.kind())) + ": " + e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
  } catch (const std::exception &e) {
    g_last_error = std::string("internal error: ") + e.what();
  } catch (...) {
    g_last_error = "internal error";
  }
  return SVF_ERR_INTERNAL;
}

void require(bool cond, const char *what) {
  if (!cond)
    throw Error(ErrorKind::InvalidArgument, what);
}

char *dup(const std::string &s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (!p)
    throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

verify::Bound to_bound(const svf_bound *b) {
  verify::Bound out;
  if (!b)
    return out;
  out.max_len = b->max_len;
  out.max_states = b->max_states;
  out.reset_ticks = b->reset_ticks;
  out.width_limit = b->width_limit;
  return out;
}

// The reset alias is 1 bit unless the caller says otherwise.
verify::WidthTable free_widths(const svf_widths *w) {
  verify::WidthTable out;
  if (w)
    out = w->w;
  out.emplace(verify::kResetAlias, 1);
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

nlohmann::json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Config, "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Config, path + " is not valid JSON: " + e.what());
  }
}

std::vector<std::string> read_responses(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read " + path);
  std::vector<std::string> out;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      auto j = nlohmann::json::parse(line);
      out.push_back(j.is_string() ? j.get<std::string>() : j.at("response").get<std::string>());
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::InvalidArgument, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

} // namespace

extern "C" {

const char *svf_version(void) { return "0.1.0"; }

const char *svf_last_error(void) { return g_last_error.c_str(); }

const char *svf_status_name(svf_status s) {
  switch (s) {
  case SVF_OK:
    return "OK";
  case SVF_ERR_PARSE:
    return "PARSE";
  case SVF_ERR_UNSUPPORTED:
    return "UNSUPPORTED";
  case SVF_ERR_UNKNOWN_SIGNAL:
    return "UNKNOWN_SIGNAL";
  case SVF_ERR_BOUND:
    return "BOUND_EXCEEDED";
  case SVF_ERR_DESIGN:
    return "DESIGN";
  case SVF_ERR_IO:
    return "IO";
  case SVF_ERR_CONFIG:
    return "CONFIG";
  case SVF_ERR_CHECKPOINT:
    return "CHECKPOINT";
  case SVF_ERR_BACKEND:
    return "BACKEND";
  case SVF_ERR_TOOL:
    return "TOOL";
  case SVF_ERR_INVALID_ARGUMENT:
    return "INVALID_ARGUMENT";
  case SVF_ERR_INTERNAL:
    return "INTERNAL";
  }
  return "UNKNOWN";
}

void svf_string_free(char *s) { std::free(s); }

svf_bound svf_bound_default(void) {
  verify::Bound b;
  return {b.max_len, b.max_states, b.reset_ticks, b.width_limit};
}

svf_status svf_assertion_parse(const char *text, svf_assertion **out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new svf_assertion{sva::parse_assertion(text)};
  });
}

svf_status svf_assertion_extract(const char *text, svf_assertion **out) {
  return guarded([&] {
    require(text && out, "null argument");
    auto candidates = sva::extract_assertions(text);
    if (auto a = sva::first_parsed(candidates)) {
      *out = new svf_assertion{std::move(*a)};
      return;
    }
    for (const auto &c : candidates)
      if (c.error)
        throw *c.error;
    throw Error(ErrorKind::Parse, "no assertion found");
  });
}

svf_status svf_assertion_print(const svf_assertion *a, char **out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = dup(sva::print_assertion(a->a));
  });
}

void svf_assertion_free(svf_assertion *a) { delete a; }

svf_status svf_design_parse(const char *source, const char *const *reset_patterns, size_t n_patterns,
                            svf_design **out) {
  return guarded([&] {
    require(source && out, "null argument");
    std::vector<std::string> patterns = rtl::kDefaultResetPatterns;
    if (reset_patterns)
      patterns.assign(reset_patterns, reset_patterns + n_patterns);
    *out = new svf_design{rtl::parse_design(source, patterns)};
  });
}

svf_status svf_design_info_json(const svf_design *d, char **out) {
  return guarded([&] {
    require(d && out, "null argument");
    nlohmann::json sigs = nlohmann::json::array();
    for (const auto &s : d->d.signals())
      sigs.push_back({{"name", s.name}, {"width", s.width}});
    nlohmann::json j = {{"name", d->d.name}, {"signals", sigs}};
    j["clock"] = d->d.clock ? nlohmann::json(*d->d.clock) : nlohmann::json(nullptr);
    if (d->d.reset)
      j["reset"] = {{"signal", d->d.reset->signal},
                    {"active_high", d->d.reset->active_high},
                    {"kind", d->d.reset->kind == rtl::ResetKind::Async ? "async" : "sync"}};
    else
      j["reset"] = nullptr;
    *out = dup(j.dump());
  });
}

void svf_design_free(svf_design *d) { delete d; }

svf_widths *svf_widths_new(void) { return new (std::nothrow) svf_widths; }

svf_status svf_widths_set(svf_widths *w, const char *signal, uint32_t width) {
  return guarded([&] {
    require(w && signal && *signal, "null argument");
    require(width > 0, "width must be positive");
    w->w[signal] = width;
  });
}

svf_status svf_widths_parse(svf_widths *w, const char *table) {
  return guarded([&] {
    require(w && table, "null argument");
    static const std::regex item(R"(\s*([A-Za-z_][A-Za-z0-9_$]*)\s*[=:]\s*([0-9]+)\s*)");
    std::string t = table;
    std::string norm;
    for (char c : t)
      norm += (c == ',' || c == ';' || c == '\n') ? ' ' : c;
    // Tokens are either "name=w" or "name:w"; rejoin "name = w" first.
    norm = std::regex_replace(norm, std::regex(R"(\s*([=:])\s*)"), "$1");
    std::istringstream in(norm);
    for (std::string tok; in >> tok;) {
      std::smatch m;
      if (!std::regex_match(tok, m, item))
        throw Error(ErrorKind::InvalidArgument, "bad width entry '" + tok + "' (expected name=width)");
      uint32_t width = static_cast<uint32_t>(std::stoul(m[2]));
      require(width > 0, "width must be positive");
      w->w[m[1]] = width;
    }
  });
}

void svf_widths_free(svf_widths *w) { delete w; }

svf_status svf_check_holds(const svf_assertion *a, const svf_design *d, const svf_bound *bound, svf_report **out) {
  return guarded([&] {
    require(a && d && out, "null argument");
    *out = new svf_report{verify::holds_on_design(a->a, d->d, to_bound(bound))};
  });
}

svf_status svf_check_equivalent_free(const svf_assertion *a, const svf_assertion *b, const svf_widths *widths,
                                     const svf_bound *bound, svf_report **out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    verify::FreeMode m;
    m.widths = free_widths(widths);
    *out = new svf_report{verify::equivalent(a->a, b->a, to_bound(bound), m)};
  });
}

svf_status svf_check_equivalent_design(const svf_assertion *a, const svf_assertion *b, const svf_design *d,
                                       const svf_bound *bound, svf_report **out) {
  return guarded([&] {
    require(a && b && d && out, "null argument");
    *out = new svf_report{verify::equivalent(a->a, b->a, to_bound(bound), verify::DesignMode{&d->d})};
  });
}

svf_status svf_check_tautology(const svf_assertion *a, const svf_widths *widths, const svf_bound *bound,
                               int *is_tautology) {
  return guarded([&] {
    require(a && is_tautology, "null argument");
    *is_tautology = verify::free_tautology(a->a, to_bound(bound), free_widths(widths)) ? 1 : 0;
  });
}

svf_status svf_check_external(const svf_assertion *a, const svf_assertion *b, const svf_design *d,
                              const char *command, svf_report **out) {
  return guarded([&] {
    require(a && command && out, "null argument");
    require((b != nullptr) != (d != nullptr), "exactly one of the second assertion and the design is required");
    verify::ExternalAdapter ad;
    ad.command = command;
    *out = new svf_report{b ? verify::external_check(a->a, b->a, ad) : verify::external_check(a->a, d->d, ad)};
  });
}

svf_outcome svf_report_outcome(const svf_report *r) {
  switch (r->r.outcome) {
  case verify::Outcome::Holds:
    return SVF_HOLDS;
  case verify::Outcome::Fails:
    return SVF_FAILS;
  case verify::Outcome::Equivalent:
    return SVF_EQUIVALENT;
  case verify::Outcome::Distinguished:
    return SVF_DISTINGUISHED;
  }
  return SVF_FAILS;
}

int svf_report_positive(const svf_report *r) { return r && r->r.positive() ? 1 : 0; }

int svf_report_tautology(const svf_report *r) { return r && r->r.tautology ? 1 : 0; }

svf_status svf_report_json(const svf_report *r, char **out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup(r->r.to_json().dump());
  });
}

svf_status svf_report_text(const svf_report *r, char **out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup(r->r.to_text());
  });
}

void svf_report_free(svf_report *r) { delete r; }

svf_status svf_pipeline_run(const char *config_path, const char *manifest_path, const char *workdir, int from, int to,
                            int64_t seed, char **summary_json, char **summary_table) {
  return guarded([&] {
    require(config_path && manifest_path && workdir, "null argument");
    auto cfg = pipeline::PipelineConfig::load(config_path);
    if (seed >= 0) {
      cfg.seed = static_cast<uint64_t>(seed);
      cfg.raw["seed"] = cfg.seed;
    }
    auto s = pipeline::Pipeline(cfg, workdir).run(manifest_path, from, to);
    if (summary_json)
      *summary_json = dup(s.to_json().dump(2));
    if (summary_table)
      *summary_table = dup(s.to_table());
  });
}

svf_status svf_eval(const char *problems_path, const char *config_path, const char *role, uint32_t n,
                    const uint32_t *ks, size_t n_ks, const svf_bound *bound, char **report_json) {
  return guarded([&] {
    require(problems_path && config_path && role && report_json, "null argument");
    require(n > 0, "n must be positive");
    for (size_t i = 0; i < n_ks; ++i)
      if (ks[i] == 0 || ks[i] > n)
        throw Error(ErrorKind::InvalidArgument,
                    "k=" + std::to_string(ks[i]) + " must satisfy 1 <= k <= n=" + std::to_string(n));

    auto cfg = read_json(config_path);
    const std::string base = fs::path(config_path).parent_path().string();
    if (!cfg.contains("backends") || !cfg["backends"].contains(role))
      throw Error(ErrorKind::Config, std::string("missing config key backends.") + role);
    auto profile = llm::BackendProfile::from_json(cfg["backends"][role], role);
    if (!profile.fixture.empty() && fs::path(profile.fixture).is_relative())
      profile.fixture = (fs::path(base) / profile.fixture).lexically_normal().string();
    auto templates = std::make_shared<llm::TemplateSet>();
    if (cfg.contains("templates_dir"))
      templates->load_dir((fs::path(base) / cfg["templates_dir"].get<std::string>()).string());
    llm::Gateway gw(llm::make_backend(profile), profile, templates, nullptr);

    std::vector<metrics::Problem> problems;
    std::ifstream in(problems_path);
    if (!in)
      throw Error(ErrorKind::Io, std::string("cannot read ") + problems_path);
    const fs::path pbase = fs::path(problems_path).parent_path();
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
        metrics::Problem p;
        p.id = j.at("id").get<std::string>();
        std::string dpath = j.at("design").get<std::string>();
        if (fs::path(dpath).is_relative())
          dpath = (pbase / dpath).string();
        p.design = rtl::parse_design(read_file(dpath));
        if (j.contains("spec"))
          p.design.spec = j["spec"].get<std::string>();
        p.nl = j.at("nl").get<std::string>();
        p.ground_truth = sva::parse_assertion(j.at("ground_truth").get<std::string>());
        problems.push_back(std::move(p));
      } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(problems_path) + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }

    auto results = metrics::evaluate(problems, gw, n, to_bound(bound));
    nlohmann::json k = nlohmann::json::object();
    for (size_t i = 0; i < n_ks; ++i)
      k[std::to_string(ks[i])] = metrics::func_at_k(results, ks[i]);
    nlohmann::json per = nlohmann::json::array();
    for (const auto &r : results) {
      nlohmann::json samples = nlohmann::json::array();
      for (const auto &s : r.samples)
        samples.push_back(s.verdict);
      per.push_back({{"id", r.problem_id}, {"n", r.n}, {"c", r.c}, {"samples", samples}});
    }
    *report_json = dup(nlohmann::json{{"n", n}, {"backend", role}, {"func_at_k", k}, {"problems", per}}.dump());
  });
}

svf_status svf_func_at_k(uint32_t n, uint32_t c, uint32_t k, double *out) {
  return guarded([&] {
    require(out, "null argument");
    *out = static_cast<double>(metrics::func_at_k_exact(n, c, k));
  });
}

svf_status svf_diversity(const char *corpus_path, uint32_t n_gram, uint64_t pair_cap, uint64_t seed, double *out) {
  return guarded([&] {
    require(corpus_path && out, "null argument");
    *out = metrics::tfidf_diversity(pipeline::read_corpus(corpus_path), {n_gram, pair_cap, seed});
  });
}

svf_status svf_diversity_curve(const char *corpus_path, const size_t *sizes, size_t n_sizes, uint32_t n_gram,
                               uint64_t pair_cap, uint64_t seed, char **csv) {
  return guarded([&] {
    require(corpus_path && sizes && csv, "null argument");
    std::vector<std::size_t> sz(sizes, sizes + n_sizes);
    auto curve = metrics::diversity_curve(pipeline::read_corpus(corpus_path), sz, {n_gram, pair_cap, seed});
    *csv = dup(metrics::curve_csv(curve, seed));
  });
}

svf_status svf_decontaminate(const char *train_path, const char *bench_path, uint32_t n, char **report_json) {
  return guarded([&] {
    require(train_path && bench_path && report_json, "null argument");
    auto r = metrics::decontaminate(pipeline::read_corpus(train_path), pipeline::read_corpus(bench_path), n);
    nlohmann::json dropped = nlohmann::json::array();
    for (const auto &c : r.dropped)
      dropped.push_back({{"index", c.index}, {"ngram", c.ngram}});
    *report_json = dup(nlohmann::json{{"n", n}, {"kept", r.kept}, {"dropped", dropped}}.dump());
  });
}

svf_status svf_count_e2e(const char *responses_path, const svf_design *d, const svf_bound *bound,
                         char **report_json) {
  return guarded([&] {
    require(responses_path && d && report_json, "null argument");
    auto c = metrics::count_e2e(read_responses(responses_path), d->d, to_bound(bound));
    *report_json =
        dup(nlohmann::json{{"sva", c.sva}, {"sync", c.sync}, {"proven", c.proven}, {"tautology", c.tautology}}.dump());
  });
}

} // extern "C"
