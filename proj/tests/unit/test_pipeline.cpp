// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "../support/fixtures.hpp"
#include "../support/golden.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/common/sha256.hpp"
#include "svaforge/llm/script_backend.hpp"
#include "svaforge/pipeline/pipeline.hpp"
#include "svaforge/sva/parser.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace svaforge;
using namespace svaforge::pipeline;
using llm::ScriptRule;

namespace {

namespace fs = std::filesystem;

std::string assertion(const std::string &label, const std::string &body) {
  return label + ": assert property (@(posedge clock) disable iff (tb_reset) " + body + ");";
}

std::string block(const std::string &text) { return "```systemverilog\n" + text + "\n```"; }

struct Prop {
  std::string nl;     // decomposed property
  std::string first;  // generator answer to nl
  std::string label;  // label inside `first`
  std::string back;   // back-translation
  std::string second; // generator answer to back
  std::string verdict;
  std::vector<std::string> weak;
  std::string reasoner;
};

const std::string kInc = "en |=> pc_addr == $past(pc_addr) + 8'd1";
const std::string kHold = "!en |=> pc_addr == $past(pc_addr)";
const std::string kThink = "en high means increment; the address therefore moves up by exactly one on each "
                           "enabled clock edge";

std::vector<Prop> counter_props() {
  std::vector<Prop> p;
  p.push_back({"While en is high, pc_addr increases by one each cycle.", block(assertion("p_inc", kInc)), "p_inc",
               "If en is asserted, pc_addr equals its previous value plus one in the following cycle.",
               block(assertion("q_inc", kInc)), "Looks right.\nVERDICT: ACCEPT",
               {assertion("w1", kInc), assertion("w2", kInc), "no idea", assertion("w4", kInc), assertion("w5", kInc)},
               "<think>" + kThink + ".</think>\n" + block(assertion("r_inc", kInc))});
  p.push_back({"While en is low, pc_addr keeps its value.", block(assertion("p_hold", kHold)), "p_hold",
               "If en is deasserted, pc_addr is unchanged in the next cycle.", block(assertion("q_hold", kHold)),
               "VERDICT: ACCEPT",
               {assertion("w1", kHold), assertion("w2", kHold), assertion("w3", kHold), assertion("w4", kHold), assertion("w5", kHold)},
               ""});
  p.push_back({"pc_addr advances by two when enabled.", assertion("p_wrong", "en |=> pc_addr == $past(pc_addr) + 8'd2"),
               "", "", "", "", {}, ""});
  p.push_back({"The counter never glitches.", "Sorry, I cannot express that.", "", "", "", "", {}, ""});
  p.push_back({"pc_addr always equals itself when en is high.", assertion("p_taut", "en |-> pc_addr == pc_addr"), "", "",
               "", "", {}, ""});
  p.push_back({"pc_addr only changes while en is high.", assertion("p_neq", kHold), "p_neq", "pc_addr never changes.",
               assertion("q_neq", "1'b1 |=> pc_addr == $past(pc_addr)"), "", {}, ""});
  p.push_back({"Whenever en is high the address moves.", assertion("p_rej", "en |=> pc_addr != $past(pc_addr)"), "p_rej",
               "When en is high, pc_addr differs from its previous value in the next cycle.",
               assertion("q_rej", "en |=> pc_addr != $past(pc_addr)"), "VERDICT: REJECT (signal_inconsistency)", {}, ""});
  p.push_back({"From three the counter steps to four.", assertion("p_unk", "en && pc_addr == 8'd3 |=> pc_addr == 8'd4"),
               "p_unk", "When en is high at address 3, the next address is 4.",
               assertion("q_unk", "en && pc_addr == 8'd3 |=> pc_addr == 8'd4"), "I am not sure.", {}, ""});
  p.push_back({"From one the counter steps to two.", assertion("p_mis", "en && pc_addr == 8'd1 |=> pc_addr == 8'd2"),
               "p_mis", "When en is high at address 1, the next address is 2.",
               assertion("q_mis", "en && pc_addr == 8'd1 |=> pc_addr == 8'd2"), "VERDICT: ACCEPT",
               {"x", "y", "z", "u", "v"},
               "<think>one plus one</think>" + assertion("r_mis", "en && pc_addr == 8'd1 |=> pc_addr == 8'd3")});
  p.push_back({"From two the counter steps to three.", assertion("p_nt", "en && pc_addr == 8'd2 |=> pc_addr == 8'd3"), "p_nt",
               "When en is high at address 2, the next address is 3.",
               assertion("q_nt", "en && pc_addr == 8'd2 |=> pc_addr == 8'd3"), "VERDICT: ACCEPT",
               {assertion("w1", "en && pc_addr == 8'd2 |=> pc_addr == 8'd3"), "junk"},
               assertion("r_nt", "en && pc_addr == 8'd2 |=> pc_addr == 8'd3")});
  return p;
}

BackendOverrides counter_backends(const std::vector<Prop> &props) {
  std::vector<ScriptRule> gen, back, judge, weak, reasoner;
  std::string analysis;
  for (std::size_t i = 0; i < props.size(); ++i) {
    const auto &p = props[i];
    analysis += "Property " + std::to_string(i + 1) + ": " + p.nl + "\n";
    gen.push_back({"nl2sva", {"### Property\n\n" + p.nl + "\n"}, {p.first}});
    if (!p.back.empty()) {
      back.push_back({"sva2nl", {p.label + ": assert property"}, {p.back}});
      gen.push_back({"nl2sva", {"### Property\n\n" + p.back + "\n"}, {p.second}});
      judge.push_back({"judge", {p.back}, {p.verdict}});
      weak.push_back({"nl2sva", {p.back}, p.weak});
      reasoner.push_back({"reasoning", {p.back}, {p.reasoner}});
    }
  }
  gen.insert(gen.begin(), ScriptRule{"property_analysis", {"module pc_counter"}, {analysis}});
  auto mk = [](std::vector<ScriptRule> r) { return std::make_shared<llm::ScriptBackend>(std::move(r)); };
  return {{"generator", mk(gen)},
          {"back_translator", mk(back)},
          {"judge", mk(judge)},
          {"weak", mk(weak)},
          {"reasoner", mk(reasoner)}};
}

nlohmann::json base_config() {
  nlohmann::json b = {{"kind", "mock"}, {"fixture", "unused.jsonl"}};
  return {{"seed", 7},
          {"workers", 4},
          {"bound", {{"max_len", 6}}},
          {"backends",
           {{"generator", b}, {"back_translator", b}, {"judge", b}, {"weak", b}, {"reasoner", b}}}};
}

void write(const fs::path &p, const std::string &text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct Workspace {
  fs::path root;
  std::string manifest;

  explicit Workspace(const std::string &name) {
    root = fs::temp_directory_path() / ("svaforge-pipeline-" + name);
    fs::remove_all(root);
    fs::create_directories(root / "rtl");
    write(root / "rtl" / "counter.v", testing::kCounterRtl);
    write(root / "rtl" / "comb.v", "module comb(input a, output b);\nassign b = a;\nendmodule\n");
    manifest = (root / "manifest.jsonl").string();
    write(manifest, nlohmann::json({{"id", "pc_counter"}, {"design", "rtl/counter.v"}, {"spec", testing::kCounterSpec}})
                            .dump() +
                        "\n" + nlohmann::json({{"design", "rtl/comb.v"}, {"spec", "wire"}}).dump() + "\n" +
                        nlohmann::json({{"id", "ghost"}, {"design", "rtl/ghost.v"}, {"spec", "x"}}).dump() + "\n");
  }
  ~Workspace() { if (!std::getenv("SVAFORGE_KEEP_TMP")) fs::remove_all(root); }
  std::string work() const { return (root / "work").string(); }
};

PipelineConfig config(const nlohmann::json &j, const Workspace &ws) {
  return PipelineConfig::from_json(j, ws.root.string());
}

std::map<std::string, uint64_t> dropped(const RunSummary &s, int stage) { return s.stages.at(stage - 1).dropped; }

} // namespace

TEST_CASE("pipeline drops each kind of bad record at its stage") {
  Workspace ws("e2e");
  auto props = counter_props();
  Pipeline p(config(base_config(), ws), ws.work(), counter_backends(props));
  auto s = p.run(ws.manifest);
  REQUIRE(s.stages.size() == 7);

  const auto &c = s.stages[0];
  CHECK(c.extra["designs"] == 3);
  CHECK(c.extra["designs_kept"] == 1);
  CHECK(c.extra["designs_rejected"]["no-clock"] == 1);
  CHECK(c.extra["designs_rejected"]["unreadable"] == 1);
  CHECK(c.alive == 10);

  CHECK(dropped(s, 2) == std::map<std::string, uint64_t>{{"not_proven", 1}, {"syntax", 1}, {"tautology", 1}});
  CHECK(s.stages[1].alive == 7);
  CHECK(dropped(s, 3) == std::map<std::string, uint64_t>{{"not_equivalent", 1}});
  CHECK(dropped(s, 4) == std::map<std::string, uint64_t>{{"judge_reject", 1}, {"judge_unknown", 1}});
  CHECK(dropped(s, 5) == std::map<std::string, uint64_t>{{"trivial", 1}});
  CHECK(dropped(s, 6) == std::map<std::string, uint64_t>{{"mismatch", 1}, {"missing_think", 1}});
  CHECK(s.stages[6].alive == 1);
  CHECK(s.stages[6].input == 1);

  // Records carry the reason and the evidence.
  std::map<std::string, nlohmann::json> by_id;
  std::ifstream in(p.checkpoint_path(7));
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    by_id[j["id"]] = j;
  }
  REQUIRE(by_id.size() == 10);
  CHECK(by_id["pc_counter/p3"]["status"]["dropped"]["reason"] == "not_proven");
  CHECK(!by_id["pc_counter/p3"]["stage_history"].back()["detail"]["counterexample"].is_null());
  CHECK(by_id["pc_counter/p6"]["stage_history"].back()["detail"].contains("witness"));
  CHECK(by_id["pc_counter/p7"]["stage_history"].back()["detail"]["categories"] ==
        nlohmann::json::array({"signal_inconsistency"}));
  CHECK(by_id["pc_counter/p1"]["status"] == "alive");
  CHECK(by_id["pc_counter/p1"]["nl"]["provenance"] == "back_translated");
  CHECK(by_id["pc_counter/p1"]["stage_history"][4]["detail"]["equivalent"] == 4);

  // The surviving record becomes one SFT line.
  auto sft = slurp(fs::path(ws.work()) / "sft.jsonl");
  auto line = nlohmann::json::parse(sft.substr(0, sft.find('\n')));
  CHECK(line["input"] == testing::kCounterRtl + "\n" + props[0].back);
  CHECK(line["label"] == "<think>" + kThink + ".</think>" + assertion("r_inc", kInc));
  CHECK(line["meta"]["id"] == "pc_counter/p1");
  CHECK(line["meta"]["stage_history_digest"].get<std::string>().size() == 64);

  auto summary = nlohmann::json::parse(slurp(fs::path(ws.work()) / "summary.json"));
  CHECK(summary == s.to_json());
  CHECK(s.to_table().find("trivial=1") != std::string::npos);
}

TEST_CASE("pipeline output does not depend on worker count") {
  Workspace ws("determinism");
  auto cfg1 = base_config();
  cfg1["workers"] = 1;
  auto cfg8 = base_config();
  cfg8["workers"] = 8;
  Pipeline a(config(cfg1, ws), ws.work() + "1", counter_backends(counter_props()));
  Pipeline b(config(cfg8, ws), ws.work() + "8", counter_backends(counter_props()));
  auto sa = a.run(ws.manifest);
  auto sb = b.run(ws.manifest);
  CHECK(sa.to_json() == sb.to_json());
  for (int k = 1; k <= 7; ++k)
    CHECK(slurp(a.checkpoint_path(k)) == slurp(b.checkpoint_path(k)));
  CHECK(slurp(fs::path(ws.work() + "1") / "sft.jsonl") == slurp(fs::path(ws.work() + "8") / "sft.jsonl"));
  fs::remove_all(ws.work() + "1");
  fs::remove_all(ws.work() + "8");
}

TEST_CASE("checkpoints: rerun skips, corruption aborts, resume continues") {
  Workspace ws("resume");
  auto props = counter_props();
  Pipeline p(config(base_config(), ws), ws.work(), counter_backends(props));
  auto first = p.run(ws.manifest);
  std::map<int, std::string> outputs;
  for (int k = 1; k <= 7; ++k)
    outputs[k] = slurp(p.checkpoint_path(k));

  SUBCASE("unchanged rerun skips every stage") {
    // Backends that fail on any call prove nothing is recomputed.
    auto fail = std::make_shared<llm::ScriptBackend>(std::vector<ScriptRule>{});
    Pipeline again(config(base_config(), ws), ws.work(),
                   {{"generator", fail}, {"back_translator", fail}, {"judge", fail}, {"weak", fail}, {"reasoner", fail}});
    auto s = again.run(ws.manifest);
    for (const auto &st : s.stages)
      CHECK(st.skipped);
    for (int k = 1; k <= 7; ++k)
      CHECK(slurp(p.checkpoint_path(k)) == outputs[k]);
    auto a = first.to_json();
    auto b = s.to_json();
    for (auto &st : a["stages"])
      st.erase("skipped");
    for (auto &st : b["stages"])
      st.erase("skipped");
    CHECK(a == b);
  }
  SUBCASE("a corrupted checkpoint aborts with its path") {
    write(p.checkpoint_path(3), outputs[3] + "\n{}\n");
    try {
      p.run(ws.manifest);
      FAIL("expected Checkpoint");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::Checkpoint);
      CHECK(std::string(e.what()).find("stage_3.jsonl") != std::string::npos);
    }
  }
  SUBCASE("resume from a later stage reuses earlier checkpoints") {
    fs::remove(p.hash_path(5));
    fs::remove(p.hash_path(6));
    fs::remove(p.hash_path(7));
    auto s = p.run(ws.manifest, 5, 7);
    REQUIRE(s.stages.size() == 3);
    CHECK(!s.stages[0].skipped);
    CHECK(s.stages[0].stage == 5);
    for (int k = 5; k <= 7; ++k)
      CHECK(slurp(p.checkpoint_path(k)) == outputs[k]);
  }
  SUBCASE("resume without the previous checkpoint aborts") {
    fs::remove(p.hash_path(4));
    CHECK_THROWS_AS(p.run(ws.manifest, 5, 7), Error);
  }
  SUBCASE("a configuration change reruns the affected stages") {
    auto cfg = base_config();
    cfg["difficulty_samples"] = 4;
    Pipeline changed(config(cfg, ws), ws.work(), counter_backends(props));
    auto s = changed.run(ws.manifest);
    CHECK(!s.stages[0].skipped);
  }
  SUBCASE("bad stage ranges are rejected") {
    for (auto [from, to] : std::vector<std::pair<int, int>>{{0, 3}, {3, 8}, {5, 4}}) {
      try {
        p.run(ws.manifest, from, to);
        FAIL("expected InvalidArgument");
      } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::InvalidArgument);
      }
    }
  }
}

TEST_CASE("export drops records sharing a long n-gram with the benchmark") {
  Workspace ws("decontam");
  write(ws.root / "bench.txt", "unrelated line about fifos\nNote that the address therefore moves up by exactly one "
                               "on each enabled clock edge and more.\n");
  auto cfg = base_config();
  cfg["decontam"] = {{"corpus", "bench.txt"}};
  Pipeline p(config(cfg, ws), ws.work(), counter_backends(counter_props()));
  auto s = p.run(ws.manifest);
  CHECK(s.stages[6].extra.is_object());
  CHECK(dropped(s, 7) == std::map<std::string, uint64_t>{{"contaminated", 1}});
  CHECK(s.stages[6].alive == 0);
  CHECK(slurp(fs::path(ws.work()) / "sft.jsonl").empty());

  SUBCASE("a 12-token overlap is kept") {
    write(ws.root / "bench.txt", "the address therefore moves up by exactly one on each enabled clock\n");
    Pipeline q(config(cfg, ws), ws.work() + "b", counter_backends(counter_props()));
    auto t = q.run(ws.manifest);
    CHECK(t.stages[6].alive == 1);
    fs::remove_all(ws.work() + "b");
  }
}

TEST_CASE("bidirectional stage") {
  Workspace ws("bidir");
  auto cfg = config(base_config(), ws);
  auto d = rtl::parse_design(testing::kCounterRtl);
  d.spec = testing::kCounterSpec;
  DesignEntry e{"c", "c.v", "kept", "", "", testing::kCounterSpec, testing::kCounterRtl, 1};

  auto run = [&](const std::string &ystar, const std::string &answer) {
    std::vector<ScriptRule> gen = {{"nl2sva", {}, {answer}}};
    std::vector<ScriptRule> back = {{"sva2nl", {}, {"Some description."}}};
    Stages st(cfg, {{"generator", std::make_shared<llm::ScriptBackend>(gen)},
                    {"back_translator", std::make_shared<llm::ScriptBackend>(back)}});
    st.set_designs({e});
    PipelineRecord r;
    r.id = "c/p1";
    r.design_ref = "c";
    r.sva_text = ystar;
    std::vector<PipelineRecord> rs{r};
    st.bidirectional(rs);
    return rs[0];
  };

  SUBCASE("reflexive: the same assertion back") {
    auto r = run(assertion("a", kInc), assertion("a", kInc));
    CHECK(r.alive());
    CHECK(r.original_sva == assertion("a", kInc));
    CHECK(r.nl.text == "Some description.");
  }
  SUBCASE("label renaming and reparenthesization survive") {
    auto r = run(assertion("a", kInc), assertion("other_name", "(en) |=> (pc_addr == ($past(pc_addr) + 8'd1))"));
    CHECK(r.alive());
    CHECK(r.sva_text.rfind("other_name", 0) == 0);
  }
  SUBCASE("a different property is dropped with a witness") {
    auto r = run(assertion("a", kInc), assertion("b", kHold));
    CHECK(r.drop_reason == "not_equivalent");
    CHECK(r.history.back().detail["witness"].is_object());
  }
  SUBCASE("unparseable retranslation") {
    auto r = run(assertion("a", kInc), "no assertion here");
    CHECK(r.drop_reason == "syntax");
  }
}

TEST_CASE("difficulty filter") {
  Workspace ws("difficulty");
  auto cfg = config(base_config(), ws);
  DesignEntry e{"c", "c.v", "kept", "", "", testing::kCounterSpec, testing::kCounterRtl, 1};
  auto run = [&](std::vector<std::string> samples) {
    std::vector<ScriptRule> weak = {{"nl2sva", {}, std::move(samples)}};
    Stages st(cfg, {{"weak", std::make_shared<llm::ScriptBackend>(weak)}});
    st.set_designs({e});
    PipelineRecord r;
    r.id = "c/p1";
    r.design_ref = "c";
    r.nl = {"x", llm::Provenance::BackTranslated};
    r.sva_text = assertion("y", kInc);
    std::vector<PipelineRecord> rs{r};
    st.difficulty(rs);
    return rs[0];
  };
  const auto good = block(assertion("s", kInc));
  SUBCASE("5 of 5 equivalent is trivial") {
    auto r = run({good, good, good, good, good});
    CHECK(r.drop_reason == "trivial");
    CHECK(r.history.back().detail["equivalent"] == 5);
  }
  SUBCASE("4 of 5 is kept") {
    auto r = run({good, good, "nonsense", good, good});
    CHECK(r.alive());
    CHECK(r.history.back().detail["equivalent"] == 4);
    CHECK(r.history.back().detail["samples"][2] == "syntax");
  }
  SUBCASE("0 of 5 is kept") {
    auto r = run({block(assertion("s", kHold)), "a", "b", "c", "d"});
    CHECK(r.alive());
    CHECK(r.history.back().detail["equivalent"] == 0);
  }
  SUBCASE("a failing sample counts as inequivalent") {
    auto r = run({good, good, good, good});
    CHECK(r.alive());
    CHECK(r.history.back().detail["samples"][4] == "backend");
  }
}

TEST_CASE("manifest and config errors") {
  Workspace ws("errors");
  auto cfg = config(base_config(), ws);
  SUBCASE("duplicate ids") {
    write(ws.manifest, "{\"id\":\"a\",\"design\":\"rtl/counter.v\"}\n{\"id\":\"a\",\"design\":\"rtl/comb.v\"}\n");
    std::vector<DesignEntry> designs;
    Stages st(cfg);
    CHECK_THROWS_AS(st.curate(ws.manifest, designs), Error);
  }
  SUBCASE("missing spec") {
    write(ws.manifest, "{\"design\":\"rtl/counter.v\"}\n");
    std::vector<DesignEntry> designs;
    Stages st(cfg);
    CHECK(st.curate(ws.manifest, designs).empty());
    CHECK(designs.at(0).reason == "no-spec");
  }
  SUBCASE("unknown and missing keys are named") {
    auto j = base_config();
    j["wokers"] = 2;
    try {
      config(j, ws);
      FAIL("expected Config");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::Config);
      CHECK(std::string(e.what()).find("wokers") != std::string::npos);
    }
    j = base_config();
    j["backends"].erase("judge");
    try {
      config(j, ws);
      FAIL("expected Config");
    } catch (const Error &e) {
      CHECK(std::string(e.what()).find("backends.judge") != std::string::npos);
    }
  }
}

TEST_CASE("record json round trip") {
  PipelineRecord r;
  r.id = "d/p2";
  r.design_ref = "d";
  r.nl = {"text", llm::Provenance::BackTranslated};
  r.sva_text = "s";
  r.reasoning = "why";
  r.pass("curate", {{"k", 1}});
  r.drop("judge", "judge_reject", {{"categories", {"rtl_misunderstanding"}}});
  auto back = PipelineRecord::from_json(r.to_json());
  CHECK(back.to_json() == r.to_json());
  CHECK(!back.alive());
  CHECK_THROWS_AS(back.drop("x", "y"), Error);
}

TEST_CASE("demo fixtures replay to the golden summary") {
  const fs::path demo = fs::path(SVAFORGE_DATA_DIR) / "demo";
  const fs::path work = fs::temp_directory_path() / "svaforge-pipeline-demo";
  fs::remove_all(work);
  auto cfg = PipelineConfig::load((demo / "config.json").string());
  auto s = Pipeline(cfg, work.string()).run((demo / "manifest.jsonl").string());
  CHECK(testing::matches_golden("pipeline_summary_demo.json", s.to_json().dump(2) + "\n"));

  std::vector<std::string> ids;
  std::ifstream in(work / "sft.jsonl");
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    ids.push_back(j["meta"]["id"]);
    CHECK(j["label"].get<std::string>().rfind("<think>", 0) == 0);
  }
  CHECK(ids == std::vector<std::string>{"pc_counter/p1", "handshake/p1"});
  fs::remove_all(work);
}
