// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/random_ast.hpp"
#include "svaforge/common/error.hpp"
#include "svaforge/sva/parser.hpp"
#include "svaforge/trace/eval.hpp"

using namespace svaforge;
using namespace svaforge::trace;

namespace {

Trace make_trace(std::vector<Signal> sigs, std::vector<std::vector<uint64_t>> steps) {
  Trace t(std::move(sigs));
  for (auto &s : steps)
    t.add_step(std::move(s));
  return t;
}

Trace random_trace(std::mt19937_64 &rng, const std::vector<Signal> &sigs, std::size_t len) {
  Trace t(sigs);
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<uint64_t> row;
    for (const auto &s : sigs)
      row.push_back(rng() & width_mask(s.width));
    t.add_step(std::move(row));
  }
  return t;
}

sva::Assertion body(const std::string &b) {
  return sva::parse_assertion("assert property (@(posedge clk) " + b + ");");
}

Verdict verdict(const std::string &b, const Trace &t) { return eval_assertion(body(b), t).verdict; }

} // namespace

TEST_CASE("eval_bool basics") {
  Trace t = make_trace({{"x", 1}, {"busy", 1}, {"mux_out", 4}}, {{1, 1, 5}, {0, 1, 5}});
  CHECK(eval_bool(*sva::parse_bool_expression("$past(x)"), t, 0) == 0);
  CHECK(eval_bool(*sva::parse_bool_expression("$past(x)"), t, 1) == 1);
  CHECK(eval_bool(*sva::parse_bool_expression("!busy"), t, 0) == 0);
  CHECK(eval_bool(*sva::parse_bool_expression("~mux_out + 1"), t, 0) == 11);
  CHECK(eval_bool(*sva::parse_bool_expression("~mux_out"), t, 0) == 10);
  CHECK(eval_bool(*sva::parse_bool_expression("mux_out == 5"), t, 0) == 1);
  CHECK(eval_bool(*sva::parse_bool_expression("mux_out == 21"), t, 0) == 0);
  CHECK(eval_bool(*sva::parse_bool_expression("mux_out[2:0]"), t, 0) == 5);
  CHECK(eval_bool(*sva::parse_bool_expression("mux_out[1]"), t, 0) == 0);
  CHECK(eval_bool(*sva::parse_bool_expression("mux_out - 6"), t, 0) == 15);
  CHECK(eval_bool(*sva::parse_bool_expression("mux_out << 1"), t, 0) == 10);
  CHECK(eval_bool(*sva::parse_bool_expression("mux_out << 2"), t, 0) == 4);
  CHECK(eval_bool(*sva::parse_bool_expression("8'd0 | mux_out << 2"), t, 0) == 20);
  CHECK(eval_bool(*sva::parse_bool_expression("$fell(x)"), t, 1) == 1);
  CHECK(eval_bool(*sva::parse_bool_expression("$rose(x)"), t, 0) == 1);
  CHECK(eval_bool(*sva::parse_bool_expression("$stable(busy)"), t, 1) == 1);
  CHECK(eval_bool(*sva::parse_bool_expression("$stable(busy)"), t, 0) == 0);
  CHECK(eval_bool(*sva::parse_bool_expression("$past(mux_out, 2) + $past(x)"), t, 1) == 1);
  CHECK_THROWS_AS(eval_bool(*sva::parse_bool_expression("nope"), t, 0), Error);
}

TEST_CASE("zero-width and out-of-range values are rejected") {
  CHECK_THROWS_AS(Trace({{"w", 0}}), Error);
  Trace t({{"a", 2}});
  CHECK_THROWS_AS(t.add_step({4}), Error);
  CHECK_THROWS_AS(t.add_step({1, 1}), Error);
}

TEST_CASE("constant properties") {
  Trace t = make_trace({{"a", 1}}, {{0}, {1}, {0}});
  EvalResult r = eval_assertion(body("1'b1"), t);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.count(AttemptStatus::Satisfied) == 3);
  CHECK(verdict("1'b0", t) == Verdict::Fail);
}

TEST_CASE("nonoverlapped implication on a two-tick trace") {
  Trace t = make_trace({{"cmd_valid", 1}, {"busy", 1}, {"tb_reset", 1}}, {{1, 0, 0}, {0, 1, 0}});
  EvalResult r = eval_assertion(sva::parse_assertion(testing::kCmdBusy), t);
  CHECK(r.verdict == Verdict::Pass);
  REQUIRE(r.attempts.size() == 2);
  CHECK(r.attempts[0].status == AttemptStatus::Satisfied);
  CHECK(r.attempts[0].decided_at == 1);
  CHECK(r.attempts[1].status == AttemptStatus::Vacuous);

  Trace cut = t.prefix(1);
  EvalResult p = eval_assertion(sva::parse_assertion(testing::kCmdBusy), cut);
  CHECK(p.verdict == Verdict::Undetermined);
  CHECK(p.attempts[0].status == AttemptStatus::Pending);
}

TEST_CASE("disable iff discards attempts") {
  Trace t = make_trace({{"cmd_valid", 1}, {"busy", 1}, {"tb_reset", 1}}, {{1, 0, 0}, {0, 0, 1}});
  EvalResult r = eval_assertion(sva::parse_assertion(testing::kCmdBusy), t);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.attempts[0].status == AttemptStatus::Disabled);

  Trace late = make_trace({{"cmd_valid", 1}, {"busy", 1}, {"tb_reset", 1}},
                          {{1, 0, 0}, {0, 0, 0}, {0, 0, 1}});
  CHECK(eval_assertion(sva::parse_assertion(testing::kCmdBusy), late).verdict == Verdict::Fail);
}

TEST_CASE("sequence semantics") {
  Trace t = make_trace({{"a", 1}, {"b", 1}}, {{1, 0}, {0, 0}, {0, 1}, {0, 0}});
  CHECK(eval_assertion(body("a |-> ##2 b"), t).attempts[0].status == AttemptStatus::Satisfied);
  CHECK(eval_assertion(body("a |-> ##1 b"), t).attempts[0].status == AttemptStatus::Failed);
  CHECK(eval_assertion(body("a |-> ##[1:3] b"), t).attempts[0].status == AttemptStatus::Satisfied);
  CHECK(eval_assertion(body("a ##1 !a[*2] |-> b"), t).attempts[0].status == AttemptStatus::Satisfied);
  CHECK(eval_assertion(body("a ##1 !a[*1:2] |-> b"), t).attempts[0].status == AttemptStatus::Failed);
  CHECK(eval_assertion(body("a |-> ##[4:5] b"), t).attempts[0].status == AttemptStatus::Pending);
  // and: both operands must match; the composite ends at the later end.
  CHECK(eval_assertion(body("(a and ##2 b) |-> b"), t).attempts[0].status == AttemptStatus::Satisfied);
  CHECK(eval_assertion(body("(a or ##2 b) |-> b"), t).attempts[0].status == AttemptStatus::Failed);
}

TEST_CASE("term_complement original never fails") {
  sva::Assertion a = sva::parse_assertion(testing::kTermComplementOriginal);
  sva::Assertion p = sva::parse_assertion(testing::kTermComplementParenthesized);
  std::vector<Signal> sigs{{"tb_reset", 1}, {"ctrl_comp", 1}, {"term", 4}, {"mux_out", 4}};
  std::mt19937_64 rng(11);
  bool paren_failed = false;
  for (int i = 0; i < 500; ++i) {
    Trace t = random_trace(rng, sigs, 1 + i % 6);
    CHECK(eval_assertion(a, t).verdict != Verdict::Fail);
    paren_failed |= eval_assertion(p, t).verdict == Verdict::Fail;
  }
  CHECK(paren_failed);
}

TEST_CASE("monotone failure, double negation, vacuity") {
  testing::AstGenOptions o;
  o.signals = {"a", "b", "c"};
  testing::AstGen gen(3, o);
  std::vector<Signal> sigs{{"a", 1}, {"b", 1}, {"c", 2}};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    sva::Assertion a = gen.assertion();
    a.clock.signal = "clk";
    Trace t = random_trace(rng, sigs, 6);
    Verdict full = eval_assertion(a, t).verdict;
    for (std::size_t k = 1; k < 6; ++k)
      if (eval_assertion(a, t.prefix(k)).verdict == Verdict::Fail)
        CHECK(full == Verdict::Fail);

    sva::Assertion nn = a;
    nn.body = sva::make_prop_not(sva::make_prop_not(a.body));
    CHECK(eval_assertion(nn, t).verdict == full);

    sva::Assertion dis = a;
    dis.disable = sva::make_literal(1, 1);
    CHECK(eval_assertion(dis, t).verdict == Verdict::Pass);
  }

  Trace quiet = make_trace({{"a", 1}, {"b", 1}}, {{0, 0}, {0, 1}, {0, 0}});
  for (const char *text : {"a |-> b", "a ##1 b |=> 1'b0", "a[*2] |-> not b"}) {
    EvalResult r = eval_assertion(body(text), quiet);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.count(AttemptStatus::Vacuous) == 3);
  }
}

TEST_CASE("implication identity over 1-bit signals") {
  sva::Assertion impl = body("a |-> b");
  sva::Assertion disj = body("!a || b");
  for (std::size_t len = 1; len <= 4; ++len) {
    for (uint64_t bits = 0; bits < (uint64_t{1} << (2 * len)); ++bits) {
      Trace t({{"a", 1}, {"b", 1}});
      for (std::size_t k = 0; k < len; ++k)
        t.add_step({(bits >> (2 * k)) & 1, (bits >> (2 * k + 1)) & 1});
      CHECK(eval_assertion(impl, t).verdict == eval_assertion(disj, t).verdict);
    }
  }
}
