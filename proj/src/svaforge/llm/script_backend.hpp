// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/llm/backend.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace svaforge::llm {

/// One scripted reply. A rule applies when the template id matches and every
/// `match` string occurs in the rendered prompt. `responses[i]` answers
/// sample i; past the end, `cycle` wraps around, otherwise the key is missing.
struct ScriptRule {
  std::string template_id;
  std::vector<std::string> match;
  std::vector<std::string> responses;
  bool cycle = false;
};

/// Rule-based backend. The first applicable rule wins.
///
/// JSON form: an array of {"template", "match": string | [string],
/// "response": string} (answers every sample) or {..., "responses":
/// [string], "cycle": bool}.
class ScriptBackend : public Backend {
public:
  explicit ScriptBackend(std::vector<ScriptRule> rules) : rules_(std::move(rules)) {}
  static std::vector<ScriptRule> rules_from_json(const nlohmann::json &j);

  Response complete(const Request &req) override;

private:
  std::vector<ScriptRule> rules_;
};

/// Forwards to another backend and remembers every successful exchange.
class RecordingBackend : public Backend {
public:
  struct Entry {
    std::string template_id;
    std::string prompt_hash;
    uint32_t sample_index;
    std::string response;
  };

  explicit RecordingBackend(std::shared_ptr<Backend> inner) : inner_(std::move(inner)) {}
  Response complete(const Request &req) override;

  /// Mock fixture lines, sorted by key so output is stable across runs.
  std::string fixture_jsonl() const;
  std::size_t size() const;

private:
  std::shared_ptr<Backend> inner_;
  mutable std::mutex mu_;
  std::vector<Entry> entries_;
};

} // namespace svaforge::llm
