// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/llm/backend.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/llm/script_backend.hpp"

#include <cstdio>
#include <fstream>

namespace svaforge::llm {

Sampling Sampling::greedy(const Sampling &base) {
  Sampling s = base;
  s.mode = SamplingMode::Greedy;
  s.temperature = 0.0;
  return s;
}

Sampling Sampling::sampled(const Sampling &base, double temperature) {
  Sampling s = base;
  s.mode = SamplingMode::Sample;
  s.temperature = temperature;
  return s;
}

namespace {

template <typename T>
T get_or(const nlohmann::json &j, const char *key, T fallback, const std::string &where) {
  if (!j.contains(key))
    return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    throw Error(ErrorKind::Config, "bad value for config key " + where + "." + key);
  }
}

std::string required(const nlohmann::json &j, const char *key, const std::string &where) {
  if (!j.contains(key))
    throw Error(ErrorKind::Config, "missing config key " + where + "." + key);
  return get_or<std::string>(j, key, "", where);
}

} // namespace

BackendProfile BackendProfile::from_json(const nlohmann::json &j, const std::string &name) {
  const std::string where = "backends." + name;
  if (!j.is_object())
    throw Error(ErrorKind::Config, "config key " + where + " must be an object");
  BackendProfile p;
  p.name = name;
  std::string kind = required(j, "kind", where);
  if (kind == "http") {
    p.kind = BackendKind::Http;
    p.endpoint = required(j, "endpoint", where);
    p.model = get_or<std::string>(j, "model", "", where);
    p.api_key_env = get_or<std::string>(j, "api_key_env", "", where);
    p.timeout_s = get_or<uint32_t>(j, "timeout_s", p.timeout_s, where);
  } else if (kind == "mock") {
    p.kind = BackendKind::Mock;
    p.fixture = required(j, "fixture", where);
  } else if (kind == "script") {
    p.kind = BackendKind::Script;
    p.fixture = required(j, "script", where);
  } else {
    throw Error(ErrorKind::Config, "config key " + where + ".kind must be http, mock or script, got " + kind);
  }
  p.max_in_flight = get_or<uint32_t>(j, "max_in_flight", p.max_in_flight, where);
  if (p.max_in_flight == 0)
    throw Error(ErrorKind::Config, "config key " + where + ".max_in_flight must be positive");

  if (j.contains("sampling")) {
    const auto &s = j.at("sampling");
    const std::string sw = where + ".sampling";
    p.sampling.temperature = get_or<double>(s, "temperature", p.sampling.temperature, sw);
    p.sampling.top_p = get_or<double>(s, "top_p", p.sampling.top_p, sw);
    p.sampling.max_tokens = get_or<uint32_t>(s, "max_tokens", p.sampling.max_tokens, sw);
    std::string mode = get_or<std::string>(s, "mode", "sample", sw);
    if (mode == "greedy")
      p.sampling = Sampling::greedy(p.sampling);
    else if (mode != "sample")
      throw Error(ErrorKind::Config, "config key " + sw + ".mode must be sample or greedy");
  }
  if (p.sampling.temperature < 0)
    throw Error(ErrorKind::Config, "config key " + where + ".sampling.temperature must be >= 0");
  if (j.contains("retry")) {
    const auto &r = j.at("retry");
    p.retry.max_attempts = get_or<uint32_t>(r, "max_attempts", p.retry.max_attempts, where + ".retry");
    p.retry.backoff_ms = get_or<uint32_t>(r, "backoff_ms", p.retry.backoff_ms, where + ".retry");
    if (p.retry.max_attempts == 0)
      throw Error(ErrorKind::Config, "config key " + where + ".retry.max_attempts must be positive");
  }
  return p;
}

std::string prompt_hash(std::string_view prompt) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : prompt) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string mock_key(const std::string &tid, const std::string &hash, uint32_t idx) {
  return tid + "|" + hash + "|" + std::to_string(idx);
}

} // namespace

MockBackend::MockBackend(const std::string &fixture_path) {
  std::ifstream in(fixture_path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read mock fixture " + fixture_path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      auto j = nlohmann::json::parse(line);
      add(j.at("template_id").get<std::string>(), j.at("prompt_hash").get<std::string>(),
          j.at("sample_index").get<uint32_t>(), j.at("response").get<std::string>());
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::Config,
                  fixture_path + ":" + std::to_string(lineno) + ": bad fixture entry: " + e.what());
    }
  }
}

void MockBackend::add(const std::string &template_id, const std::string &hash, uint32_t sample_index,
                      const std::string &response) {
  entries_[mock_key(template_id, hash, sample_index)] = response;
}

Response MockBackend::complete(const Request &req) {
  auto it = entries_.find(mock_key(req.template_id, req.prompt_hash, req.sample_index));
  if (it == entries_.end())
    throw Error(ErrorKind::MockKeyMissing, "no mock response for template " + req.template_id +
                                               " prompt_hash " + req.prompt_hash + " sample " +
                                               std::to_string(req.sample_index));
  return {it->second, 1};
}

std::unique_ptr<Backend> make_backend(const BackendProfile &profile) {
  if (profile.kind == BackendKind::Mock)
    return std::make_unique<MockBackend>(profile.fixture);
  if (profile.kind == BackendKind::Script) {
    std::ifstream in(profile.fixture);
    if (!in)
      throw Error(ErrorKind::Config, "cannot read script " + profile.fixture);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::Config, "script " + profile.fixture + " is not valid JSON: " + e.what());
    }
    return std::make_unique<ScriptBackend>(ScriptBackend::rules_from_json(j));
  }
  return std::make_unique<HttpBackend>(profile);
}

AuditLog::AuditLog(std::string path) : path_(std::move(path)) {}

void AuditLog::append(const nlohmann::json &entry) {
  std::lock_guard<std::mutex> lock(mu_);
  ++count_;
  if (path_.empty())
    return;
  std::ofstream out(path_, std::ios::app);
  out << entry.dump() << '\n';
  if (!out)
    throw Error(ErrorKind::Io, "cannot append to audit log " + path_);
}

std::size_t AuditLog::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return count_;
}

} // namespace svaforge::llm
