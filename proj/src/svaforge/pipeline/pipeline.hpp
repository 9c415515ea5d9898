// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/llm/gateway.hpp"
#include "svaforge/pipeline/config.hpp"
#include "svaforge/pipeline/record.hpp"
#include "svaforge/rtl/design.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace svaforge::pipeline {

/// Stage k (1-based) is kStageNames[k-1].
inline const std::vector<std::string> kStageNames = {"curate",     "generate_verify", "bidirectional", "judge",
                                                     "difficulty", "reasoning",       "export"};
inline constexpr int kFirstStage = 1;
inline constexpr int kLastStage = 7;

/// A design from the manifest and what curation made of it.
struct DesignEntry {
  std::string ref;
  std::string path;
  std::string status; // "kept" or "rejected"
  std::string reason; // rejection reason
  std::string detail;
  std::string spec;
  std::string source;
  uint32_t properties = 0;

  nlohmann::json to_json() const;
  static DesignEntry from_json(const nlohmann::json &j);
};

/// Role -> backend, replacing what the configuration would build.
using BackendOverrides = std::map<std::string, std::shared_ptr<llm::Backend>>;

using LogFn = std::function<void(const std::string &)>;

struct ExportReport {
  uint64_t candidates = 0;
  uint64_t exported = 0;
  uint64_t contaminated = 0;
};

/// The individual stages. Records are processed concurrently up to
/// cfg.workers; results do not depend on the worker count.
class Stages {
public:
  Stages(PipelineConfig cfg, BackendOverrides overrides = {}, std::shared_ptr<llm::AuditLog> audit = nullptr,
         LogFn log = nullptr);

  const PipelineConfig &config() const { return cfg_; }

  /// Reads the manifest (JSON Lines: {id?, design, spec | spec_file}) and
  /// emits one record per decomposed property of every curated design.
  std::vector<PipelineRecord> curate(const std::string &manifest_path, std::vector<DesignEntry> &designs);
  /// Makes the kept designs available to the later stages.
  void set_designs(const std::vector<DesignEntry> &designs);

  void generate_verify(std::vector<PipelineRecord> &records);
  void bidirectional(std::vector<PipelineRecord> &records);
  void judge(std::vector<PipelineRecord> &records);
  void difficulty(std::vector<PipelineRecord> &records);
  void reasoning(std::vector<PipelineRecord> &records);
  /// Writes one SFT line per alive record to `sft_path`; with a non-empty
  /// `bench`, records sharing an n-gram with it are dropped first.
  ExportReport export_sft(std::vector<PipelineRecord> &records, const std::string &sft_path,
                          const std::vector<std::string> &bench);

  llm::Gateway &gateway(const std::string &role);
  const rtl::DesignUnit &design(const std::string &ref) const;

private:
  verify::Mode equivalence_mode(const rtl::DesignUnit &d) const;
  void for_alive(std::vector<PipelineRecord> &records, const std::function<void(PipelineRecord &)> &fn);

  PipelineConfig cfg_;
  BackendOverrides overrides_;
  std::shared_ptr<llm::AuditLog> audit_;
  std::shared_ptr<const llm::TemplateSet> templates_;
  LogFn log_;
  std::map<std::string, rtl::DesignUnit> designs_;
  std::mutex gw_mu_;
  std::map<std::string, std::unique_ptr<llm::Gateway>> gateways_;
};

/// SFT label for a record: "<think>" r "</think>" y''.
std::string sft_label(const PipelineRecord &r);
/// SFT input for a record: design source, newline, NL property.
std::string sft_input(const PipelineRecord &r, const std::string &design_source);

struct StageSummary {
  int stage = 0;
  std::string name;
  bool skipped = false;
  uint64_t input = 0;
  uint64_t alive = 0;
  std::map<std::string, uint64_t> dropped;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

struct RunSummary {
  uint64_t seed = 0;
  std::vector<StageSummary> stages;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Checkpointed driver. The workdir holds stage_<k>.jsonl and
/// stage_<k>.hash per stage, designs.jsonl, audit.log, run.log, sft.jsonl,
/// and summary.json.
class Pipeline {
public:
  Pipeline(PipelineConfig cfg, std::string workdir, BackendOverrides overrides = {});

  /// Runs stages from..to. A stage whose checkpoint was produced from the
  /// same input and configuration is skipped. Throws Checkpoint when a
  /// checkpoint does not match its recorded hash, InvalidArgument on a bad
  /// stage range.
  RunSummary run(const std::string &manifest_path, int from = kFirstStage, int to = kLastStage);

  std::string checkpoint_path(int stage) const;
  std::string hash_path(int stage) const;

private:
  std::string config_fingerprint() const;
  std::string manifest_fingerprint(const std::string &manifest_path) const;

  PipelineConfig cfg_;
  std::string workdir_;
  BackendOverrides overrides_;
};

} // namespace svaforge::pipeline
