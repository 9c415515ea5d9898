// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/llm/backend.hpp"
#include "svaforge/verify/verify.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svaforge::pipeline {

/// Backend roles, each a BackendProfile under `backends.<role>`.
inline const std::vector<std::string> kRoles = {"generator", "back_translator", "judge", "weak", "reasoner"};

/// Pipeline configuration file (JSON). Keys:
///   backends.{generator,back_translator,judge,weak,reasoner}  required
///   seed, workers, bound.{max_len,max_states,reset_ticks,width_limit},
///   reset_patterns, widths, equivalence_mode ("design" | "free"),
///   difficulty_samples, drop_policy.{judge_unknown,missing_think} ("drop" |
///   "keep"), templates_dir, decontam.{corpus,n}
/// Relative paths are resolved against the directory of the file.
struct PipelineConfig {
  uint64_t seed = 0;
  uint32_t workers = 4;
  verify::Bound bound;
  std::vector<std::string> reset_patterns;
  verify::WidthTable widths;
  bool free_equivalence = false;
  uint32_t difficulty_samples = 5;
  bool keep_judge_unknown = false;
  bool keep_missing_think = false;
  std::string templates_dir;
  std::string decontam_corpus;
  uint32_t decontam_n = 13;
  std::map<std::string, llm::BackendProfile> backends;

  /// Canonical form used to fingerprint checkpoints.
  nlohmann::json raw;

  static PipelineConfig from_json(const nlohmann::json &j, const std::string &base_dir);
  /// Throws Config with the offending key name.
  static PipelineConfig load(const std::string &path);
};

/// Reads a corpus: one document per non-blank line. In a .jsonl file each
/// line is a JSON string or an object with a "text" field.
std::vector<std::string> read_corpus(const std::string &path);

} // namespace svaforge::pipeline
