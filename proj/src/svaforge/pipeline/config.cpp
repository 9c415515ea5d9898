// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/pipeline/config.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/rtl/design.hpp"

#include <filesystem>
#include <fstream>
#include <set>

namespace svaforge::pipeline {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string &key, const std::string &what) {
  throw Error(ErrorKind::Config, "config key " + key + ": " + what);
}

template <typename T> T value(const nlohmann::json &j, const std::string &key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception &) {
    bad(key, "wrong type");
  }
}

std::string resolve(const std::string &base, const std::string &p) {
  if (p.empty() || fs::path(p).is_absolute())
    return p;
  return (fs::path(base) / p).lexically_normal().string();
}

void check_keys(const nlohmann::json &j, const std::string &where, const std::set<std::string> &allowed) {
  if (!j.is_object())
    bad(where.empty() ? "<root>" : where, "must be an object");
  for (const auto &[k, _] : j.items())
    if (!allowed.count(k))
      bad(where.empty() ? k : where + "." + k, "unknown key");
}

} // namespace

PipelineConfig PipelineConfig::from_json(const nlohmann::json &j, const std::string &base_dir) {
  check_keys(j, "", {"seed", "workers", "bound", "reset_patterns", "widths", "equivalence_mode",
                     "difficulty_samples", "drop_policy", "templates_dir", "decontam", "backends"});
  PipelineConfig c;
  c.reset_patterns = rtl::kDefaultResetPatterns;
  if (j.contains("seed"))
    c.seed = value<uint64_t>(j["seed"], "seed");
  if (j.contains("workers"))
    c.workers = value<uint32_t>(j["workers"], "workers");
  if (c.workers == 0)
    bad("workers", "must be positive");
  if (j.contains("bound")) {
    const auto &b = j["bound"];
    check_keys(b, "bound", {"max_len", "max_states", "reset_ticks", "width_limit"});
    if (b.contains("max_len"))
      c.bound.max_len = value<uint32_t>(b["max_len"], "bound.max_len");
    if (b.contains("max_states"))
      c.bound.max_states = value<uint64_t>(b["max_states"], "bound.max_states");
    if (b.contains("reset_ticks"))
      c.bound.reset_ticks = value<uint32_t>(b["reset_ticks"], "bound.reset_ticks");
    if (b.contains("width_limit"))
      c.bound.width_limit = value<uint32_t>(b["width_limit"], "bound.width_limit");
    if (c.bound.max_len == 0)
      bad("bound.max_len", "must be positive");
  }
  if (j.contains("reset_patterns"))
    c.reset_patterns = value<std::vector<std::string>>(j["reset_patterns"], "reset_patterns");
  if (j.contains("widths"))
    c.widths = value<verify::WidthTable>(j["widths"], "widths");
  if (j.contains("equivalence_mode")) {
    auto m = value<std::string>(j["equivalence_mode"], "equivalence_mode");
    if (m != "design" && m != "free")
      bad("equivalence_mode", "must be design or free");
    c.free_equivalence = m == "free";
  }
  if (j.contains("difficulty_samples"))
    c.difficulty_samples = value<uint32_t>(j["difficulty_samples"], "difficulty_samples");
  if (c.difficulty_samples == 0)
    bad("difficulty_samples", "must be at least 1");
  if (j.contains("drop_policy")) {
    const auto &d = j["drop_policy"];
    check_keys(d, "drop_policy", {"judge_unknown", "missing_think"});
    auto flag = [&](const char *k, bool &keep) {
      if (!d.contains(k))
        return;
      auto v = value<std::string>(d[k], std::string("drop_policy.") + k);
      if (v != "drop" && v != "keep")
        bad(std::string("drop_policy.") + k, "must be drop or keep");
      keep = v == "keep";
    };
    flag("judge_unknown", c.keep_judge_unknown);
    flag("missing_think", c.keep_missing_think);
  }
  if (j.contains("templates_dir"))
    c.templates_dir = resolve(base_dir, value<std::string>(j["templates_dir"], "templates_dir"));
  if (j.contains("decontam")) {
    const auto &d = j["decontam"];
    check_keys(d, "decontam", {"corpus", "n"});
    if (d.contains("corpus"))
      c.decontam_corpus = resolve(base_dir, value<std::string>(d["corpus"], "decontam.corpus"));
    if (d.contains("n"))
      c.decontam_n = value<uint32_t>(d["n"], "decontam.n");
    if (c.decontam_n == 0)
      bad("decontam.n", "must be positive");
  }
  if (!j.contains("backends"))
    throw Error(ErrorKind::Config, "missing config key backends");
  const auto &bs = j["backends"];
  check_keys(bs, "backends", {kRoles.begin(), kRoles.end()});
  for (const auto &role : kRoles) {
    if (!bs.contains(role))
      throw Error(ErrorKind::Config, "missing config key backends." + role);
    auto p = llm::BackendProfile::from_json(bs[role], role);
    p.fixture = resolve(base_dir, p.fixture);
    c.backends.emplace(role, std::move(p));
  }
  c.raw = j;
  return c;
}

PipelineConfig PipelineConfig::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Config, "cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Config, "config file " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j, fs::path(path).parent_path().string());
}

std::vector<std::string> read_corpus(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read corpus " + path);
  const bool jsonl = fs::path(path).extension() == ".jsonl";
  std::vector<std::string> out;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    if (!jsonl) {
      out.push_back(line);
      continue;
    }
    try {
      auto j = nlohmann::json::parse(line);
      out.push_back(j.is_string() ? j.get<std::string>() : j.at("text").get<std::string>());
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::InvalidArgument, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

} // namespace svaforge::pipeline
