// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "../support/fixtures.hpp"
#include "svaforge/common/error.hpp"
#include "svaforge/metrics/metrics.hpp"
#include "svaforge/sva/parser.hpp"

#include <cmath>

using namespace svaforge;
using namespace svaforge::metrics;

namespace {

EvalResult res(uint32_t n, uint32_t c) {
  EvalResult r;
  r.n = n;
  r.c = c;
  return r;
}

const std::string kInc = "inc: assert property (@(posedge clock) disable iff (tb_reset) "
                         "en |=> pc_addr == $past(pc_addr) + 1);";
const std::string kBad = "bad: assert property (@(posedge clock) disable iff (tb_reset) "
                         "en |=> pc_addr == $past(pc_addr) + 2);";

} // namespace

TEST_CASE("func_at_k examples") {
  CHECK(func_at_k({res(32, 0)}, 16) == 0.0);
  CHECK(func_at_k({res(32, 32)}, 1) == 1.0);
  CHECK(func_at_k_exact(4, 2, 2) == Rational(5, 6));
  CHECK(func_at_k({res(4, 2)}, 2) == doctest::Approx(0.8333333333333334).epsilon(1e-15));
  CHECK(func_at_k({res(4, 2), res(4, 0)}, 2) == doctest::Approx(5.0 / 12));
  CHECK(func_at_k({res(10, 8)}, 3) == 1.0); // n - c < k
  CHECK_THROWS_AS(func_at_k({res(4, 2)}, 5), Error);
  CHECK_THROWS_AS(func_at_k({res(4, 2)}, 0), Error);
  CHECK_THROWS_AS(func_at_k({}, 1), Error);
}

TEST_CASE("tfidf diversity") {
  DiversityOptions o;
  CHECK(tfidf_diversity({"a |-> b ##1 c", "a |-> b ##1 c"}, o) == 0.0);
  CHECK(tfidf_diversity({"a b c d", "w x y z"}, o) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(tfidf_diversity({"a b c"}, o), Error);

  SUBCASE("hand-computed three-document value") {
    // Trigrams: d1 {abc}, d2 {abc:2, bcd, cda, dab}, d3 {bcd}.
    double wa = std::log(3.0 / 2) + 1, wb = std::log(3.0) + 1;
    double n2 = std::sqrt(5 * wa * wa + 2 * wb * wb);
    double expected = ((1 - 2 * wa / n2) + 1.0 + (1 - wa / n2)) / 3;
    CHECK(std::abs(tfidf_diversity({"a b c", "a b c d a b c", "b c d"}, o) - expected) < 1e-12);
  }
  SUBCASE("documents shorter than n") {
    CHECK(tfidf_diversity({"a b", "a b"}, o) == 0.0);
    CHECK(tfidf_diversity({"a b", "a b c"}, o) == 1.0);
  }
  SUBCASE("pair sampling is seeded and bounded") {
    std::vector<std::string> corpus;
    for (int i = 0; i < 40; ++i)
      corpus.push_back("x" + std::to_string(i % 7) + " |-> y" + std::to_string(i % 5) + " ##1 z");
    DiversityOptions capped;
    capped.pair_cap = 50;
    capped.seed = 3;
    double a = tfidf_diversity(corpus, capped), b = tfidf_diversity(corpus, capped);
    CHECK(a == b);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    double full = tfidf_diversity(corpus, o);
    CHECK(std::abs(a - full) < 0.2);
  }
  SUBCASE("curve") {
    std::vector<std::string> corpus;
    for (int i = 0; i < 12; ++i)
      corpus.push_back("s" + std::to_string(i) + " |=> t" + std::to_string(i % 3));
    auto curve = diversity_curve(corpus, {1, 5, 10, 50}, o);
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].size == 5);
    CHECK(curve[1].size == 10);
    CHECK(curve_csv(curve, 0).rfind("size,diversity,seed\n5,", 0) == 0);
  }
}

TEST_CASE("decontamination") {
  std::string bench = "the quick brown fox jumps over the lazy dog near river bank at dawn today";
  auto words = normalize_tokens(bench);
  REQUIRE(words.size() == 15);
  auto span = [&](std::size_t from, std::size_t len) {
    std::string s;
    for (std::size_t i = from; i < from + len; ++i)
      s += (i > from ? "-" : "") + words[i];
    return s;
  };
  std::vector<std::string> train = {
      "PREFIX " + span(1, 13) + " suffix",    // 13-token overlap, odd separators
      "prefix " + span(0, 12) + " different", // 12 tokens only
      "short text",
  };
  auto r = decontaminate(train, {bench}, 13);
  REQUIRE(r.dropped.size() == 1);
  CHECK(r.dropped[0].index == 0);
  CHECK(r.dropped[0].ngram == "quick brown fox jumps over the lazy dog near river bank at dawn");
  CHECK(r.kept == std::vector<std::size_t>{1, 2});

  auto self = decontaminate({bench, "a b c", span(0, 13)}, {bench, "a b c", span(0, 13)}, 13);
  CHECK(self.kept == std::vector<std::size_t>{1});
  CHECK(normalize_tokens("Foo_bar--BAZ9 x") == std::vector<std::string>{"foo", "bar", "baz9", "x"});
  CHECK_THROWS_AS(decontaminate({}, {}, 0), Error);
}

TEST_CASE("count_e2e") {
  auto d = rtl::parse_design(testing::kCounterRtl);
  verify::Bound b;
  b.max_len = 4;
  auto c = count_e2e({"```\n" + kInc + "\n```", kBad, "```\nbroken: assert property (@(posedge clock) en |-> );\n```"},
                     d, b);
  CHECK(c.sva == 3);
  CHECK(c.sync == 2);
  CHECK(c.proven == 1);
  CHECK(c.tautology == 0);

  auto none = count_e2e({}, d, b);
  CHECK(none.sva == 0);
  CHECK(none.sync == 0);
  CHECK(none.proven == 0);

  auto t = count_e2e({"t: assert property (@(posedge clock) 1'b1);"}, d, b);
  CHECK(t.sva == 1);
  CHECK(t.sync == 1);
  CHECK(t.proven == 1);
  CHECK(t.tautology == 1);
}

TEST_CASE("evaluate counts equivalent samples") {
  auto d = rtl::parse_design(testing::kCounterRtl);
  Problem p{"inc", d, "increments when enabled", sva::parse_assertion(kInc)};
  verify::Bound b;
  b.max_len = 4;
  auto make = [](std::function<std::string(const llm::Request &)> fn) {
    llm::BackendProfile prof;
    prof.name = "eval";
    return llm::Gateway(std::make_shared<llm::CallbackBackend>(std::move(fn)), prof,
                        std::make_shared<llm::TemplateSet>(), nullptr);
  };
  auto echo = make([](const llm::Request &r) {
    CHECK(r.sampling.effective_temperature() == doctest::Approx(0.8));
    CHECK(r.sampling.top_p == doctest::Approx(0.95));
    return kInc;
  });
  auto all = evaluate({p}, echo, 32, b);
  CHECK(all[0].c == 32);
  CHECK(func_at_k(all, 1) == 1.0);

  auto alt = make([](const llm::Request &r) { return r.sample_index % 2 ? kBad : kInc; });
  auto half = evaluate({p}, alt, 32, b);
  CHECK(half[0].c == 16);
  CHECK(func_at_k(half, 1) == 0.5);

  auto junk = make([](const llm::Request &r) -> std::string {
    if (r.sample_index == 0)
      return "no code here";
    if (r.sample_index == 1)
      throw Error(ErrorKind::Backend, "down");
    return kInc;
  });
  auto j = evaluate({p}, junk, 4, b);
  CHECK(j[0].n == 4);
  CHECK(j[0].c == 2);
  CHECK_FALSE(j[0].samples[0].syntax_ok);
  CHECK(j[0].samples[0].verdict == "syntax");
  CHECK(j[0].samples[1].verdict.rfind("error", 0) == 0);
}
