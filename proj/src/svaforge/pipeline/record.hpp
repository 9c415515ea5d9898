// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/llm/gateway.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace svaforge::pipeline {

struct StageEntry {
  std::string stage;
  std::string verdict; // "pass", "keep", or the drop reason
  nlohmann::json detail = nlohmann::json::object();
};

/// One candidate datum. `sva_text` is the current assertion: y* after
/// generation, y' after bidirectional selection.
struct PipelineRecord {
  std::string id;
  std::string design_ref;
  llm::NlProperty nl;
  std::string sva_text;
  std::string original_sva; // y*, set by the bidirectional stage
  std::optional<std::string> reasoning;
  std::string final_sva; // y'' as written by the reasoner
  std::vector<StageEntry> history;
  std::string drop_stage; // empty while alive
  std::string drop_reason;

  bool alive() const { return drop_stage.empty(); }
  void pass(const std::string &stage, nlohmann::json detail = nlohmann::json::object());
  void drop(const std::string &stage, const std::string &reason, nlohmann::json detail = nlohmann::json::object());

  nlohmann::json to_json() const;
  static PipelineRecord from_json(const nlohmann::json &j);
};

} // namespace svaforge::pipeline
