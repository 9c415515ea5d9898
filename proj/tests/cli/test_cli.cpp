// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

// Drives the svaforge executable and checks stdout, stderr and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = SVAFORGE_CLI;
const fs::path kData = SVAFORGE_DATA_DIR;
const fs::path kTests = SVAFORGE_TEST_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string quote(const std::string &s) {
  std::string q = "'";
  for (char c : s)
    q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// `env` is prepended to the command line, e.g. "SVAFORGE_CONFIG=x".
Run run(const std::vector<std::string> &args, const std::string &env = "") {
  const fs::path tmp = fs::temp_directory_path();
  const fs::path out = tmp / "svaforge-cli-out.txt";
  const fs::path err = tmp / "svaforge-cli-err.txt";
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += quote(kCli);
  for (const auto &a : args)
    cmd += " " + quote(a);
  cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

bool contains(const std::string &hay, const std::string &needle) { return hay.find(needle) != std::string::npos; }

fs::path scratch(const std::string &name) {
  fs::path p = fs::temp_directory_path() / ("svaforge-cli-" + name);
  fs::remove_all(p);
  return p;
}

std::string data(const std::string &rel) { return (kData / rel).string(); }
std::string test_data(const std::string &rel) { return (kTests / "data" / rel).string(); }

const std::string kTermWidths = "ctrl_comp=1,term=4,mux_out=4";

} // namespace

TEST_CASE("synthesize on the demo fixtures reproduces the golden summary") {
  auto work = scratch("synth");
  auto r = run({"--config", data("demo/config.json"), "--json", "synthesize", "--manifest",
                data("demo/manifest.jsonl"), "--workdir", work.string()});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(kTests / "golden" / "pipeline_summary_demo.json"));

  SUBCASE("table output and config from the environment") {
    auto t = run({"synthesize", "--manifest", data("demo/manifest.jsonl"), "--workdir", work.string()},
                 "SVAFORGE_CONFIG=" + quote(data("demo/config.json")));
    CHECK(t.code == 0);
    CHECK(contains(t.out, "generate_verify"));
    CHECK(contains(t.out, "(skipped)"));
  }
  SUBCASE("corrupted checkpoint aborts with exit 3 and the path") {
    std::ofstream(work / "stage_2.jsonl", std::ios::app) << "{}\n";
    auto t = run({"--config", data("demo/config.json"), "synthesize", "--manifest", data("demo/manifest.jsonl"),
                  "--workdir", work.string()});
    CHECK(t.code == 3);
    CHECK(contains(t.err, "stage_2.jsonl"));
  }
  SUBCASE("bad stage range is a usage error") {
    auto t = run({"--config", data("demo/config.json"), "synthesize", "--manifest", data("demo/manifest.jsonl"),
                  "--workdir", work.string(), "--from", "5", "--to", "2"});
    CHECK(t.code == 2);
  }
  fs::remove_all(work);
}

TEST_CASE("synthesize reports a missing config key by name") {
  auto dir = scratch("badcfg");
  fs::create_directories(dir);
  nlohmann::json cfg = nlohmann::json::parse(slurp(kData / "demo" / "config.json"));
  cfg["backends"].erase("reasoner");
  std::ofstream(dir / "config.json") << cfg.dump();
  auto r = run({"--config", (dir / "config.json").string(), "synthesize", "--manifest", data("demo/manifest.jsonl"),
                "--workdir", (dir / "work").string()});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "backends.reasoner"));
  CHECK(r.out.empty());
  fs::remove_all(dir);
}

TEST_CASE("check exit codes follow the verdict") {
  SUBCASE("term_complement pair is distinguished with a witness") {
    auto r = run({"check", "--equiv", test_data("term_complement_original.sva"),
                  test_data("term_complement_parenthesized.sva"), "--widths", kTermWidths, "--bound", "4"});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "DISTINGUISHED"));
    CHECK(contains(r.out, "tick"));
    CHECK(contains(r.out, "mux_out"));
  }
  SUBCASE("identical files are equivalent") {
    auto r = run({"check", "--equiv", test_data("term_complement_parenthesized.sva"),
                  test_data("term_complement_parenthesized.sva"), "--widths", kTermWidths, "--bound", "4"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "EQUIVALENT"));
  }
  SUBCASE("widths over the limit are a usage error") {
    auto r = run({"check", "--equiv", test_data("term_complement_original.sva"),
                  test_data("term_complement_parenthesized.sva"), "--widths", "ctrl_comp=1,term=16,mux_out=16"});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "BOUND_EXCEEDED"));
  }
  SUBCASE("tautology") {
    auto r = run({"check", "--tautology", test_data("term_complement_original.sva"), "--widths", kTermWidths, "--bound",
                  "4"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "TAUTOLOGY"));
    auto n = run({"check", "--tautology", test_data("term_complement_parenthesized.sva"), "--widths", kTermWidths,
                  "--bound", "4"});
    CHECK(n.code == 1);
  }
  SUBCASE("holds on the counter, fails when corrupted") {
    auto ok = run({"check", "--holds", test_data("counter_inc.sva"), data("demo/rtl/pc_counter.v"), "--bound", "5"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "HOLDS"));
    auto bad = run({"--json", "check", "--holds", test_data("counter_inc_corrupted.sva"),
                    data("demo/rtl/pc_counter.v"), "--bound", "5"});
    CHECK(bad.code == 1);
    auto j = nlohmann::json::parse(bad.out);
    CHECK(j["outcome"] == "FAILS");
    CHECK(j["witness"].is_object());
  }
  SUBCASE("unparseable input") {
    auto dir = scratch("junk");
    fs::create_directories(dir);
    std::ofstream(dir / "junk.sva") << "assert property (";
    auto r = run({"check", "--tautology", (dir / "junk.sva").string()});
    CHECK(r.code == 2);
    fs::remove_all(dir);
  }
  SUBCASE("no mode selected") {
    CHECK(run({"check"}).code == 2);
  }
}

TEST_CASE("eval reports Func@k") {
  auto echo = run({"--config", data("eval/config.json"), "--json", "eval", "--problems", data("eval/problems.jsonl"),
                   "--backend", "echo"});
  REQUIRE(echo.code == 0);
  auto j = nlohmann::json::parse(echo.out);
  CHECK(j["func_at_k"]["1"] == 1.0);
  CHECK(j["func_at_k"]["32"] == 1.0);

  auto half = run({"--config", data("eval/config.json"), "--json", "eval", "--problems", data("eval/problems.jsonl"),
                   "--backend", "half"});
  REQUIRE(half.code == 0);
  CHECK(nlohmann::json::parse(half.out)["func_at_k"]["1"] == 0.5);

  auto table = run({"--config", data("eval/config.json"), "eval", "--problems", data("eval/problems.jsonl"),
                    "--backend", "half"});
  CHECK(contains(table.out, "Func.@1"));
  CHECK(contains(table.out, "Func.@16"));
  CHECK(contains(table.out, "Func.@32"));
  CHECK(contains(table.out, "0.5000"));

  auto big_k = run({"--config", data("eval/config.json"), "eval", "--problems", data("eval/problems.jsonl"),
                    "--backend", "echo", "-n", "4", "-k", "5"});
  CHECK(big_k.code == 2);
}

TEST_CASE("stats") {
  auto div = run({"--json", "stats", "--diversity", data("stats/identical.txt")});
  REQUIRE(div.code == 0);
  CHECK(nlohmann::json::parse(div.out)["diversity"] == 0.0);

  auto dc = run({"--json", "stats", "--decontam", data("stats/decontam_train.txt"), data("stats/decontam_bench.txt")});
  REQUIRE(dc.code == 0);
  auto j = nlohmann::json::parse(dc.out);
  CHECK(j["dropped"].size() == 1);
  CHECK(j["dropped"][0]["index"] == 0);

  auto counts = run({"stats", "--counts", data("stats/counts_responses.jsonl"), data("demo/rtl/pc_counter.v"), "--bound",
                     "4"});
  CHECK(counts.code == 0);
  CHECK(counts.out == "3 2 1\n");

  auto curve = run({"--seed", "5", "stats", "--diversity", data("corpus/assertions.txt"), "--curve", "10,50,100"});
  CHECK(curve.code == 0);
  CHECK(contains(curve.out, "size,diversity,seed\n10,"));

  CHECK(run({"stats", "--diversity", data("stats/missing.txt")}).code == 2);
}

TEST_CASE("json output is one document and runs are reproducible") {
  const std::vector<std::vector<std::string>> invocations = {
      {"--json", "--seed", "9", "stats", "--diversity", data("corpus/assertions.txt"), "--curve", "10,50"},
      {"--json", "check", "--equiv", test_data("term_complement_original.sva"),
       test_data("term_complement_parenthesized.sva"), "--widths", kTermWidths, "--bound", "4"},
      {"--json", "--config", data("eval/config.json"), "eval", "--problems", data("eval/problems.jsonl"), "--backend",
       "half", "-n", "4", "-k", "1,4"},
  };
  for (const auto &args : invocations) {
    auto a = run(args);
    auto b = run(args);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::accept(a.out));
  }
}

TEST_CASE("credentials are not accepted as flags") {
  auto r = run({"--api-key", "secret", "stats", "--diversity", data("stats/identical.txt")});
  CHECK(r.code == 2);
}
