// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/pipeline/pipeline.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/common/sha256.hpp"
#include "svaforge/metrics/metrics.hpp"
#include "svaforge/sva/parser.hpp"
#include "svaforge/sva/printer.hpp"
#include "svaforge/trace/trace_json.hpp"
#include "svaforge/verify/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace svaforge::pipeline {

namespace fs = std::filesystem;

nlohmann::json DesignEntry::to_json() const {
  return {{"ref", ref},       {"path", path},     {"status", status}, {"reason", reason},
          {"detail", detail}, {"spec", spec},     {"source", source}, {"properties", properties}};
}

DesignEntry DesignEntry::from_json(const nlohmann::json &j) {
  DesignEntry d;
  d.ref = j.at("ref").get<std::string>();
  d.path = j.at("path").get<std::string>();
  d.status = j.at("status").get<std::string>();
  d.reason = j.at("reason").get<std::string>();
  d.detail = j.at("detail").get<std::string>();
  d.spec = j.at("spec").get<std::string>();
  d.source = j.at("source").get<std::string>();
  d.properties = j.at("properties").get<uint32_t>();
  return d;
}

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string &path, const std::string &data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << data;
  out.close();
  if (!out)
    throw Error(ErrorKind::Io, "cannot write " + path);
}

// Drop reason for an error raised while handling one record.
std::string reason_for(const Error &e) {
  switch (e.kind()) {
  case ErrorKind::Backend:
  case ErrorKind::MockKeyMissing:
  case ErrorKind::EmptyTranslation:
    return "backend";
  case ErrorKind::BoundExceeded:
    return "bound";
  default:
    return "verify_error";
  }
}

nlohmann::json error_detail(const Error &e) {
  return {{"error", error_kind_name(e.kind())}, {"message", e.what()}};
}

nlohmann::json witness_json(const verify::CheckReport &rep) {
  if (!rep.witness)
    return nullptr;
  return trace::trace_to_json(*rep.witness);
}

struct ManifestEntry {
  std::string id;
  std::string design_path;
  std::optional<std::string> spec;
  std::string spec_path;
};

std::vector<ManifestEntry> read_manifest(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Config, "cannot read manifest " + path);
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string &p) {
    return fs::path(p).is_absolute() ? p : (base / p).lexically_normal().string();
  };
  std::vector<ManifestEntry> out;
  std::set<std::string> ids;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    ManifestEntry e;
    try {
      auto j = nlohmann::json::parse(line);
      e.design_path = resolve(j.at("design").get<std::string>());
      e.id = j.contains("id") ? j["id"].get<std::string>() : fs::path(e.design_path).stem().string();
      if (j.contains("spec"))
        e.spec = j["spec"].get<std::string>();
      else if (j.contains("spec_file"))
        e.spec_path = resolve(j["spec_file"].get<std::string>());
    } catch (const nlohmann::json::exception &ex) {
      throw Error(ErrorKind::Config, path + ":" + std::to_string(lineno) + ": bad manifest entry: " + ex.what());
    }
    if (!ids.insert(e.id).second)
      throw Error(ErrorKind::Config, path + ":" + std::to_string(lineno) + ": duplicate design id " + e.id);
    out.push_back(std::move(e));
  }
  return out;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads; rethrows the first
// exception after all workers finish.
void parallel_for(std::size_t n, uint32_t workers, const std::function<void(std::size_t)> &fn) {
  const std::size_t threads = std::min<std::size_t>(std::max<uint32_t>(workers, 1), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first)
            first = std::current_exception();
        }
      }
    });
  for (auto &th : pool)
    th.join();
  if (first)
    std::rethrow_exception(first);
}

} // namespace

//===----------------------------------------------------------------------===//
// Stages
//===----------------------------------------------------------------------===//

Stages::Stages(PipelineConfig cfg, BackendOverrides overrides, std::shared_ptr<llm::AuditLog> audit, LogFn log)
    : cfg_(std::move(cfg)), overrides_(std::move(overrides)), audit_(std::move(audit)), log_(std::move(log)) {
  auto ts = std::make_shared<llm::TemplateSet>();
  if (!cfg_.templates_dir.empty())
    ts->load_dir(cfg_.templates_dir);
  templates_ = ts;
  if (!audit_)
    audit_ = std::make_shared<llm::AuditLog>();
  if (!log_)
    log_ = [](const std::string &) {};
}

llm::Gateway &Stages::gateway(const std::string &role) {
  std::lock_guard<std::mutex> lock(gw_mu_);
  auto it = gateways_.find(role);
  if (it != gateways_.end())
    return *it->second;
  auto prof = cfg_.backends.find(role);
  if (prof == cfg_.backends.end())
    throw Error(ErrorKind::Config, "missing config key backends." + role);
  std::shared_ptr<llm::Backend> backend;
  if (auto o = overrides_.find(role); o != overrides_.end())
    backend = o->second;
  else
    backend = llm::make_backend(prof->second);
  auto gw = std::make_unique<llm::Gateway>(backend, prof->second, templates_, audit_);
  return *gateways_.emplace(role, std::move(gw)).first->second;
}

const rtl::DesignUnit &Stages::design(const std::string &ref) const {
  auto it = designs_.find(ref);
  if (it == designs_.end())
    throw Error(ErrorKind::Checkpoint, "record refers to unknown design " + ref);
  return it->second;
}

void Stages::set_designs(const std::vector<DesignEntry> &designs) {
  designs_.clear();
  for (const auto &e : designs) {
    if (e.status != "kept")
      continue;
    auto d = rtl::parse_design(e.source, cfg_.reset_patterns);
    d.spec = e.spec;
    designs_.emplace(e.ref, std::move(d));
  }
}

verify::Mode Stages::equivalence_mode(const rtl::DesignUnit &d) const {
  if (!cfg_.free_equivalence)
    return verify::DesignMode{&d};
  verify::FreeMode m;
  for (const auto &s : d.signals())
    m.widths[s.name] = s.width;
  m.widths[verify::kResetAlias] = 1;
  for (const auto &[k, w] : cfg_.widths)
    m.widths[k] = w;
  return m;
}

void Stages::for_alive(std::vector<PipelineRecord> &records, const std::function<void(PipelineRecord &)> &fn) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].alive())
      idx.push_back(i);
  parallel_for(idx.size(), cfg_.workers, [&](std::size_t k) { fn(records[idx[k]]); });
}

std::vector<PipelineRecord> Stages::curate(const std::string &manifest_path, std::vector<DesignEntry> &designs) {
  const auto manifest = read_manifest(manifest_path);
  designs.assign(manifest.size(), {});
  std::vector<std::vector<llm::NlProperty>> props(manifest.size());
  parallel_for(manifest.size(), cfg_.workers, [&](std::size_t i) {
    const auto &m = manifest[i];
    DesignEntry &e = designs[i];
    e.ref = m.id;
    e.path = m.design_path;
    e.status = "rejected";
    auto reject = [&](const std::string &reason, const std::string &detail) {
      e.reason = reason;
      e.detail = detail;
      log_("curate: design " + m.id + " rejected (" + reason + "): " + detail);
    };
    try {
      e.source = read_file(m.design_path);
      e.spec = m.spec ? *m.spec : m.spec_path.empty() ? "" : read_file(m.spec_path);
    } catch (const Error &ex) {
      return reject("unreadable", ex.what());
    }
    if (e.spec.empty())
      return reject("no-spec", "manifest entry has no specification");
    rtl::DesignUnit d;
    try {
      d = rtl::parse_design(e.source, cfg_.reset_patterns);
    } catch (const Error &ex) {
      return reject("parse", std::string(error_kind_name(ex.kind())) + ": " + ex.what());
    }
    d.spec = e.spec;
    auto cur = rtl::curate({d});
    if (cur.kept.empty())
      return reject(cur.rejected.at(0).reason, d.clock_issue);
    try {
      props[i] = gateway("generator").analyze_properties(d);
    } catch (const Error &ex) {
      return reject(ex.kind() == ErrorKind::NoPropertiesParsed ? "no-properties" : "backend", ex.what());
    }
    e.status = "kept";
    e.properties = static_cast<uint32_t>(props[i].size());
  });

  std::vector<PipelineRecord> out;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    for (std::size_t j = 0; j < props[i].size(); ++j) {
      PipelineRecord r;
      r.id = designs[i].ref + "/p" + std::to_string(j + 1);
      r.design_ref = designs[i].ref;
      r.nl = props[i][j];
      r.pass("curate", {{"property", r.nl.text}});
      out.push_back(std::move(r));
    }
  }
  set_designs(designs);
  return out;
}

void Stages::generate_verify(std::vector<PipelineRecord> &records) {
  const std::string stage = "generate_verify";
  for_alive(records, [&](PipelineRecord &r) {
    const auto &d = design(r.design_ref);
    llm::SvaResult y;
    try {
      y = gateway("generator").nl2sva(d, r.nl);
    } catch (const Error &e) {
      return r.drop(stage, reason_for(e), error_detail(e));
    }
    if (!y.parsed)
      return r.drop(stage, "syntax", {{"response", y.raw}});
    try {
      auto rep = verify::holds_on_design(*y.parsed, d, cfg_.bound);
      if (rep.outcome == verify::Outcome::Fails)
        return r.drop(stage, "not_proven", {{"sva", y.text}, {"counterexample", witness_json(rep)}});
      if (rep.tautology)
        return r.drop(stage, "tautology", {{"sva", y.text}});
      r.sva_text = y.text;
      r.pass(stage, {{"sva", y.text}, {"states", rep.states}, {"vacuous_attempts", rep.attempts_vacuous},
                     {"attempts", rep.attempts_total}});
    } catch (const Error &e) {
      r.drop(stage, reason_for(e), error_detail(e));
    }
  });
}

void Stages::bidirectional(std::vector<PipelineRecord> &records) {
  const std::string stage = "bidirectional";
  for_alive(records, [&](PipelineRecord &r) {
    const auto &d = design(r.design_ref);
    auto ystar = sva::parse_assertion(r.sva_text);
    llm::NlProperty xstar;
    llm::SvaResult yp;
    try {
      xstar = gateway("back_translator").sva2nl(d, ystar);
      yp = gateway("generator").nl2sva(d, xstar, verify::data_signals(ystar));
    } catch (const Error &e) {
      return r.drop(stage, "backend", error_detail(e));
    }
    if (!yp.parsed)
      return r.drop(stage, "syntax", {{"nl", xstar.text}, {"response", yp.raw}});
    try {
      auto rep = verify::equivalent(*yp.parsed, ystar, cfg_.bound, equivalence_mode(d));
      if (!rep.positive())
        return r.drop(stage, "not_equivalent",
                      {{"nl", xstar.text}, {"sva", yp.text}, {"witness", witness_json(rep)}});
    } catch (const Error &e) {
      return r.drop(stage, reason_for(e), error_detail(e));
    }
    r.pass(stage, {{"nl_before", r.nl.text}, {"nl", xstar.text}, {"sva", yp.text}});
    r.original_sva = r.sva_text;
    r.sva_text = yp.text;
    r.nl = xstar;
  });
}

void Stages::judge(std::vector<PipelineRecord> &records) {
  const std::string stage = "judge";
  for_alive(records, [&](PipelineRecord &r) {
    const auto &d = design(r.design_ref);
    llm::JudgeResult v;
    try {
      v = gateway("judge").judge(d, r.nl, sva::parse_assertion(r.sva_text));
    } catch (const Error &e) {
      return r.drop(stage, "backend", error_detail(e));
    }
    if (v.verdict == llm::JudgeVerdict::Reject)
      return r.drop(stage, "judge_reject", {{"categories", v.flagged}});
    if (v.verdict == llm::JudgeVerdict::Unknown) {
      if (!cfg_.keep_judge_unknown)
        return r.drop(stage, "judge_unknown", {{"response", v.raw}});
      return r.pass(stage, {{"verdict", "unknown"}});
    }
    r.pass(stage, {{"verdict", "accept"}});
  });
}

void Stages::difficulty(std::vector<PipelineRecord> &records) {
  const std::string stage = "difficulty";
  for_alive(records, [&](PipelineRecord &r) {
    const auto &d = design(r.design_ref);
    auto yp = sva::parse_assertion(r.sva_text);
    auto &gw = gateway("weak");
    auto samples = gw.sample_sva(d, r.nl, std::nullopt, cfg_.difficulty_samples,
                                 llm::Sampling::sampled(gw.profile().sampling, llm::kSampleTemperature));
    uint32_t equivalent = 0;
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto &s : samples) {
      if (!s.error.empty()) {
        log_("difficulty: " + r.id + ": sample failed: " + s.error);
        verdicts.push_back("backend");
        continue;
      }
      if (!s.parsed) {
        verdicts.push_back("syntax");
        continue;
      }
      try {
        auto rep = verify::equivalent(*s.parsed, yp, cfg_.bound, equivalence_mode(d));
        verdicts.push_back(verify::outcome_name(rep.outcome));
        if (rep.positive())
          ++equivalent;
      } catch (const Error &e) {
        verdicts.push_back(reason_for(e));
      }
    }
    nlohmann::json detail = {{"equivalent", equivalent}, {"samples", verdicts}};
    if (equivalent == cfg_.difficulty_samples)
      return r.drop(stage, "trivial", detail);
    r.pass(stage, detail);
  });
}

void Stages::reasoning(std::vector<PipelineRecord> &records) {
  const std::string stage = "reasoning";
  for_alive(records, [&](PipelineRecord &r) {
    const auto &d = design(r.design_ref);
    llm::ReasonResult res;
    try {
      res = gateway("reasoner").reason(d, r.nl);
    } catch (const Error &e) {
      return r.drop(stage, "backend", error_detail(e));
    }
    if (res.missing_think && !cfg_.keep_missing_think)
      return r.drop(stage, "missing_think", {{"response", res.raw}});
    if (!res.sva)
      return r.drop(stage, "syntax", {{"response", res.raw}});
    try {
      auto rep = verify::equivalent(*res.sva, sva::parse_assertion(r.sva_text), cfg_.bound, equivalence_mode(d));
      if (!rep.positive())
        return r.drop(stage, "mismatch", {{"sva", res.sva_text}, {"witness", witness_json(rep)}});
    } catch (const Error &e) {
      return r.drop(stage, reason_for(e), error_detail(e));
    }
    r.reasoning = res.reasoning;
    r.final_sva = res.sva_text;
    r.pass(stage, {{"missing_think", res.missing_think}});
  });
}

std::string sft_label(const PipelineRecord &r) {
  return "<think>" + r.reasoning.value_or("") + "</think>" + r.final_sva;
}

std::string sft_input(const PipelineRecord &r, const std::string &design_source) {
  return design_source + "\n" + r.nl.text;
}

ExportReport Stages::export_sft(std::vector<PipelineRecord> &records, const std::string &sft_path,
                                const std::vector<std::string> &bench) {
  const std::string stage = "export";
  ExportReport rep;
  std::vector<std::size_t> idx;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].alive())
      continue;
    idx.push_back(i);
    const auto &r = records[i];
    texts.push_back(sft_input(r, design(r.design_ref).source) + "\n" + sft_label(r));
  }
  rep.candidates = idx.size();
  if (!bench.empty()) {
    auto dc = metrics::decontaminate(texts, bench, cfg_.decontam_n);
    for (const auto &c : dc.dropped) {
      records[idx[c.index]].drop(stage, "contaminated", {{"ngram", c.ngram}});
      ++rep.contaminated;
    }
  }
  std::string out;
  for (std::size_t i : idx) {
    auto &r = records[i];
    if (!r.alive())
      continue;
    nlohmann::json h = nlohmann::json::array();
    for (const auto &e : r.history)
      h.push_back({{"stage", e.stage}, {"verdict", e.verdict}, {"detail", e.detail}});
    r.pass(stage);
    nlohmann::json line = {
        {"input", sft_input(r, design(r.design_ref).source)},
        {"label", sft_label(r)},
        {"meta", {{"id", r.id}, {"design_ref", r.design_ref}, {"stage_history_digest", sha256_hex(h.dump())}}},
    };
    out += line.dump() + "\n";
    ++rep.exported;
  }
  write_file(sft_path, out);
  return rep;
}

//===----------------------------------------------------------------------===//
// Summaries
//===----------------------------------------------------------------------===//

nlohmann::json StageSummary::to_json() const {
  nlohmann::json j = {{"stage", stage}, {"name", name},   {"skipped", skipped},
                      {"input", input}, {"alive", alive}, {"dropped", dropped}};
  for (const auto &[k, v] : extra.items())
    j[k] = v;
  return j;
}

nlohmann::json RunSummary::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto &s : stages)
    st.push_back(s.to_json());
  return {{"seed", seed}, {"stages", st}};
}

std::string RunSummary::to_table() const {
  std::ostringstream os;
  os << std::left << std::setw(4) << "#" << std::setw(17) << "stage" << std::right << std::setw(7) << "input"
     << std::setw(7) << "alive" << "  dropped\n";
  for (const auto &s : stages) {
    os << std::left << std::setw(4) << s.stage << std::setw(17) << s.name << std::right << std::setw(7) << s.input
       << std::setw(7) << s.alive << "  ";
    bool first = true;
    for (const auto &[reason, n] : s.dropped) {
      os << (first ? "" : ", ") << reason << '=' << n;
      first = false;
    }
    if (first)
      os << '-';
    if (s.skipped)
      os << "  (skipped)";
    os << '\n';
    for (const auto &[k, v] : s.extra.items())
      os << "    " << k << ": " << v.dump() << '\n';
  }
  return os.str();
}

namespace {

StageSummary summarize(int k, const std::vector<PipelineRecord> &records) {
  StageSummary s;
  s.stage = k;
  s.name = kStageNames[k - 1];
  auto stage_of = [](const std::string &name) {
    return static_cast<int>(std::find(kStageNames.begin(), kStageNames.end(), name) - kStageNames.begin()) + 1;
  };
  for (const auto &r : records) {
    int dropped_at = r.alive() ? kLastStage + 1 : stage_of(r.drop_stage);
    if (dropped_at < k)
      continue;
    ++s.input;
    if (dropped_at == k)
      ++s.dropped[r.drop_reason];
    else
      ++s.alive;
  }
  return s;
}

void add_design_counts(StageSummary &s, const std::vector<DesignEntry> &designs) {
  std::map<std::string, uint64_t> rejected;
  uint64_t kept = 0;
  for (const auto &d : designs) {
    if (d.status == "kept")
      ++kept;
    else
      ++rejected[d.reason];
  }
  s.extra["designs"] = designs.size();
  s.extra["designs_kept"] = kept;
  s.extra["designs_rejected"] = rejected;
}

std::string records_text(const std::vector<PipelineRecord> &records) {
  std::string out;
  for (const auto &r : records)
    out += r.to_json().dump() + "\n";
  return out;
}

std::vector<PipelineRecord> parse_records(const std::string &text, const std::string &path) {
  std::vector<PipelineRecord> out;
  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (line.empty())
      continue;
    try {
      out.push_back(PipelineRecord::from_json(nlohmann::json::parse(line)));
    } catch (const std::exception &e) {
      throw Error(ErrorKind::Checkpoint, path + ":" + std::to_string(lineno) + ": unreadable record: " + e.what());
    }
  }
  return out;
}

// Reads a checkpoint file and checks it against the hash recorded in `hash`.
std::string verified_read(const std::string &path, const nlohmann::json &hash, const char *key) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error &) {
    throw Error(ErrorKind::Checkpoint, "missing checkpoint " + path);
  }
  if (!hash.contains(key) || hash[key] != sha256_hex(text))
    throw Error(ErrorKind::Checkpoint, "checkpoint hash mismatch: " + path);
  return text;
}

std::optional<nlohmann::json> read_hash(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &) {
    throw Error(ErrorKind::Checkpoint, "unreadable hash file " + path);
  }
}

} // namespace

//===----------------------------------------------------------------------===//
// Pipeline
//===----------------------------------------------------------------------===//

Pipeline::Pipeline(PipelineConfig cfg, std::string workdir, BackendOverrides overrides)
    : cfg_(std::move(cfg)), workdir_(std::move(workdir)), overrides_(std::move(overrides)) {}

std::string Pipeline::checkpoint_path(int stage) const {
  return (fs::path(workdir_) / ("stage_" + std::to_string(stage) + ".jsonl")).string();
}

std::string Pipeline::hash_path(int stage) const {
  return (fs::path(workdir_) / ("stage_" + std::to_string(stage) + ".hash")).string();
}

std::string Pipeline::config_fingerprint() const {
  std::string acc = cfg_.raw.dump() + "\nseed=" + std::to_string(cfg_.seed);
  auto add_file = [&](const std::string &p) {
    if (p.empty())
      return;
    acc += "\n" + p + "=";
    try {
      acc += sha256_file(p);
    } catch (const Error &) {
      acc += "missing";
    }
  };
  for (const auto &[role, p] : cfg_.backends)
    if (p.kind != llm::BackendKind::Http && !overrides_.count(role))
      add_file(p.fixture);
  for (const auto &[role, _] : overrides_)
    acc += "\noverride=" + role;
  if (!cfg_.templates_dir.empty())
    for (const auto &id : llm::TemplateSet::ids())
      if (fs::exists(fs::path(cfg_.templates_dir) / (id + ".txt")))
        add_file((fs::path(cfg_.templates_dir) / (id + ".txt")).string());
  add_file(cfg_.decontam_corpus);
  return sha256_hex(acc);
}

std::string Pipeline::manifest_fingerprint(const std::string &manifest_path) const {
  std::string acc;
  try {
    acc = read_file(manifest_path);
    for (const auto &e : read_manifest(manifest_path)) {
      for (const auto &p : {e.design_path, e.spec_path}) {
        if (p.empty())
          continue;
        try {
          acc += "\n" + sha256_file(p);
        } catch (const Error &) {
          acc += "\nunreadable";
        }
      }
    }
  } catch (const Error &) {
    // Reported by the curate stage itself.
  }
  return sha256_hex(acc);
}

RunSummary Pipeline::run(const std::string &manifest_path, int from, int to) {
  if (from < kFirstStage || to > kLastStage || from > to)
    throw Error(ErrorKind::InvalidArgument, "stage range must satisfy 1 <= from <= to <= 7 (got " +
                                                std::to_string(from) + ".." + std::to_string(to) + ")");
  fs::create_directories(workdir_);
  const std::string designs_path = (fs::path(workdir_) / "designs.jsonl").string();
  const std::string sft_path = (fs::path(workdir_) / "sft.jsonl").string();
  auto run_log = std::make_shared<std::mutex>();
  const std::string log_path = (fs::path(workdir_) / "run.log").string();
  LogFn log = [run_log, log_path](const std::string &line) {
    std::lock_guard<std::mutex> lock(*run_log);
    std::ofstream(log_path, std::ios::app) << line << '\n';
  };
  Stages stages(cfg_, overrides_, std::make_shared<llm::AuditLog>((fs::path(workdir_) / "audit.log").string()),
                log);
  const std::string config_sha = config_fingerprint();

  std::vector<PipelineRecord> records;
  std::vector<DesignEntry> designs;
  auto load_designs = [&](const nlohmann::json &hash) {
    designs.clear();
    std::istringstream in(verified_read(designs_path, hash, "designs"));
    for (std::string line; std::getline(in, line);)
      if (!line.empty())
        designs.push_back(DesignEntry::from_json(nlohmann::json::parse(line)));
    stages.set_designs(designs);
  };

  std::string input_sha;
  if (from == kFirstStage) {
    input_sha = manifest_fingerprint(manifest_path);
  } else {
    auto prev_hash = read_hash(hash_path(from - 1));
    if (!prev_hash)
      throw Error(ErrorKind::Checkpoint, "missing checkpoint " + hash_path(from - 1));
    std::string text = verified_read(checkpoint_path(from - 1), *prev_hash, "output");
    records = parse_records(text, checkpoint_path(from - 1));
    input_sha = sha256_hex(text);
    auto h1 = read_hash(hash_path(1));
    if (!h1)
      throw Error(ErrorKind::Checkpoint, "missing checkpoint " + hash_path(1));
    load_designs(*h1);
  }

  RunSummary summary;
  summary.seed = cfg_.seed;
  for (int k = from; k <= to; ++k) {
    const std::string out_path = checkpoint_path(k);
    StageSummary ss;
    auto existing = read_hash(hash_path(k));
    bool skip = false;
    if (existing && fs::exists(out_path)) {
      std::string text = verified_read(out_path, *existing, "output");
      if (k == kLastStage)
        verified_read(sft_path, *existing, "export");
      if ((*existing)["input"] == input_sha && (*existing)["config"] == config_sha) {
        skip = true;
        records = parse_records(text, out_path);
        if (k == kFirstStage)
          load_designs(*existing);
        input_sha = sha256_hex(text);
      }
    }
    if (!skip) {
      log("stage " + std::to_string(k) + " " + kStageNames[k - 1] + ": running");
      switch (k) {
      case 1:
        records = stages.curate(manifest_path, designs);
        break;
      case 2:
        stages.generate_verify(records);
        break;
      case 3:
        stages.bidirectional(records);
        break;
      case 4:
        stages.judge(records);
        break;
      case 5:
        stages.difficulty(records);
        break;
      case 6:
        stages.reasoning(records);
        break;
      case 7: {
        std::vector<std::string> bench;
        if (!cfg_.decontam_corpus.empty())
          bench = read_corpus(cfg_.decontam_corpus);
        auto rep = stages.export_sft(records, sft_path, bench);
        log("export: " + std::to_string(rep.exported) + " exported, " + std::to_string(rep.contaminated) +
            " contaminated");
        break;
      }
      }
      std::string text = records_text(records);
      nlohmann::json hash = {{"stage", k}, {"name", kStageNames[k - 1]}, {"input", input_sha},
                             {"config", config_sha}};
      if (k == kFirstStage) {
        std::string dtext;
        for (const auto &d : designs)
          dtext += d.to_json().dump() + "\n";
        write_file(designs_path, dtext);
        hash["designs"] = sha256_hex(dtext);
      }
      if (k == kLastStage)
        hash["export"] = sha256_file(sft_path);
      write_file(out_path, text);
      hash["output"] = sha256_hex(text);
      write_file(hash_path(k), hash.dump(2) + "\n");
      input_sha = hash["output"];
    } else {
      log("stage " + std::to_string(k) + " " + kStageNames[k - 1] + ": up to date, skipped");
    }
    ss = summarize(k, records);
    ss.skipped = skip;
    if (k == kLastStage)
      ss.extra["exported"] = ss.alive;
    if (k == kFirstStage) {
      add_design_counts(ss, designs);
      ss.input = ss.alive;
    }
    summary.stages.push_back(std::move(ss));
  }
  write_file((fs::path(workdir_) / "summary.json").string(), summary.to_json().dump(2) + "\n");
  return summary;
}

} // namespace svaforge::pipeline
