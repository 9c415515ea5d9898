// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

// Regenerates the mock fixtures of a pipeline configuration from a script of
// canned replies, then replays them through the mock backends to check that
// the fixtures reproduce the scripted run.
//
//   gen_demo_fixtures --config data/demo/config.json --script data/demo/script.json \
//       --manifest data/demo/manifest.jsonl [--summary-out tests/golden/pipeline_summary_demo.json]

#include "svaforge/common/error.hpp"
#include "svaforge/llm/script_backend.hpp"
#include "svaforge/pipeline/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace svaforge;

int main(int argc, char **argv) {
  CLI::App app{"Regenerate mock fixtures from a reply script"};
  std::string config_path, script_path, manifest, summary_out;
  std::string workdir = (fs::temp_directory_path() / "svaforge-gen-fixtures").string();
  app.add_option("--config", config_path, "pipeline configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--script", script_path, "role -> rules")->required()->check(CLI::ExistingFile);
  app.add_option("--manifest", manifest, "design manifest")->required()->check(CLI::ExistingFile);
  app.add_option("--workdir", workdir, "scratch directory (removed first)");
  app.add_option("--summary-out", summary_out, "write the replayed summary.json here");
  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = pipeline::PipelineConfig::load(config_path);
    nlohmann::json script;
    std::ifstream(script_path) >> script;

    pipeline::BackendOverrides overrides;
    std::map<std::string, std::shared_ptr<llm::RecordingBackend>> recorders;
    for (const auto &role : pipeline::kRoles) {
      auto rules = script.contains(role) ? llm::ScriptBackend::rules_from_json(script[role])
                                         : std::vector<llm::ScriptRule>{};
      auto rec = std::make_shared<llm::RecordingBackend>(std::make_shared<llm::ScriptBackend>(std::move(rules)));
      recorders[role] = rec;
      overrides[role] = rec;
    }

    fs::remove_all(workdir);
    auto scripted = pipeline::Pipeline(cfg, workdir + "/scripted", overrides).run(manifest);
    for (const auto &role : pipeline::kRoles) {
      const auto &fixture = cfg.backends.at(role).fixture;
      fs::create_directories(fs::path(fixture).parent_path());
      std::ofstream(fixture, std::ios::trunc) << recorders[role]->fixture_jsonl();
      std::cout << role << ": " << recorders[role]->size() << " calls -> " << fixture << "\n";
    }

    auto replayed = pipeline::Pipeline(cfg, workdir + "/replayed").run(manifest);
    std::cout << replayed.to_table();
    if (replayed.to_json() != scripted.to_json()) {
      std::cerr << "replay through the fixtures diverged from the scripted run\n";
      return 1;
    }
    if (!summary_out.empty())
      std::ofstream(summary_out, std::ios::trunc) << replayed.to_json().dump(2) << "\n";
    fs::remove_all(workdir);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
