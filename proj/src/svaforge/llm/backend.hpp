// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace svaforge::llm {

enum class SamplingMode { Sample, Greedy };

struct Sampling {
  double temperature = 0.8;
  double top_p = 0.95;
  uint32_t max_tokens = 2048;
  SamplingMode mode = SamplingMode::Sample;

  /// Greedy decoding sends temperature 0 whatever `temperature` says.
  double effective_temperature() const { return mode == SamplingMode::Greedy ? 0.0 : temperature; }
  static Sampling greedy(const Sampling &base);
  static Sampling sampled(const Sampling &base, double temperature);
};

struct RetryPolicy {
  uint32_t max_attempts = 4;
  uint32_t backoff_ms = 500; // doubled after every failed attempt
};

enum class BackendKind { Http, Mock, Script };

struct BackendProfile {
  std::string name;
  BackendKind kind = BackendKind::Mock;
  // http
  std::string endpoint; // e.g. https://host:443/v1/chat/completions
  std::string model;
  std::string api_key_env; // variable holding the bearer token; empty for none
  uint32_t timeout_s = 120;
  // mock: JSON Lines fixture; script: JSON rule file (see ScriptBackend)
  std::string fixture;

  Sampling sampling;
  RetryPolicy retry;
  uint32_t max_in_flight = 4;

  /// Throws Config on unknown keys' values or a negative temperature.
  static BackendProfile from_json(const nlohmann::json &j, const std::string &name);
};

/// FNV-1a 64 of the rendered prompt as 16 lowercase hex digits.
std::string prompt_hash(std::string_view prompt);

struct Request {
  std::string template_id;
  std::string prompt;
  std::string prompt_hash;
  uint32_t sample_index = 0;
  Sampling sampling;
};

struct Response {
  std::string text;
  uint32_t attempts = 1;
};

class Backend {
public:
  virtual ~Backend() = default;
  virtual Response complete(const Request &req) = 0;
};

/// Replays a JSON Lines fixture keyed by (template_id, prompt_hash, sample_index).
class MockBackend : public Backend {
public:
  explicit MockBackend(const std::string &fixture_path);
  /// Entries given directly; used by tools that build fixtures.
  MockBackend() = default;

  void add(const std::string &template_id, const std::string &hash, uint32_t sample_index,
           const std::string &response);
  Response complete(const Request &req) override;
  std::size_t size() const { return entries_.size(); }

private:
  std::map<std::string, std::string> entries_;
};

/// Chat-completions client over HTTP(S). One request per sample.
class HttpBackend : public Backend {
public:
  explicit HttpBackend(BackendProfile profile);
  Response complete(const Request &req) override;

private:
  BackendProfile profile_;
  std::string base_;
  std::string path_;
  std::string token_;
};

/// Backend driven by a function; handy for tests and fixture generation.
class CallbackBackend : public Backend {
public:
  using Fn = std::function<std::string(const Request &)>;
  explicit CallbackBackend(Fn fn) : fn_(std::move(fn)) {}
  Response complete(const Request &req) override { return {fn_(req), 1}; }

private:
  Fn fn_;
};

std::unique_ptr<Backend> make_backend(const BackendProfile &profile);

/// Append-only JSON Lines log of every backend call. An empty path keeps
/// entries in memory only.
class AuditLog {
public:
  explicit AuditLog(std::string path = {});

  void append(const nlohmann::json &entry);
  std::size_t size() const;

private:
  std::string path_;
  mutable std::mutex mu_;
  std::size_t count_ = 0;
};

} // namespace svaforge::llm
