// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/random_ast.hpp"
#include "svaforge/sva/extract.hpp"
#include "svaforge/sva/lexer.hpp"
#include "svaforge/sva/parser.hpp"
#include "svaforge/sva/printer.hpp"

using namespace svaforge;
using namespace svaforge::sva;

namespace {

BoolPtr id(const char *n) { return make_ident(n); }

ErrorKind parse_error_kind(const std::string &text) {
  auto r = try_parse_assertion(text);
  REQUIRE(std::holds_alternative<ParseError>(r));
  return std::get<ParseError>(r).kind();
}

void check_round_trip(const Assertion &a) {
  std::string printed = print_assertion(a);
  Assertion back = parse_assertion(printed);
  INFO(printed);
  CHECK(equal(a, back));
  CHECK(print_assertion(back) == printed);
  CHECK(signals_of(back) == signals_of(a));
}

} // namespace

TEST_CASE("minimal assertion") {
  Assertion a = parse_assertion("a: assert property (@(posedge clk) 1'b1);");
  CHECK(a.label == "a");
  CHECK(a.clock.signal == "clk");
  CHECK(a.clock.edge == Edge::Posedge);
  CHECK(a.disable == nullptr);
  CHECK(equal(*a.body, *make_prop_seq(make_seq_bool(make_literal(1, 1)))));
  CHECK(print_assertion(a) == "a: assert property (@(posedge clk) 1'b1);");
}

TEST_CASE("term_complement unparenthesized body nests the implications") {
  Assertion a = parse_assertion(testing::kTermComplementOriginal);
  BoolPtr twos = make_binary(
      BinaryOp::Eq, id("term"),
      make_binary(BinaryOp::Add, make_unary(UnaryOp::BitwiseNot, id("mux_out")),
                  make_literal(32, 1, 'd', false)));
  PropPtr expected = make_implication(
      true, make_seq_bool(id("ctrl_comp")),
      make_implication(true,
                       make_seq_and(make_seq_bool(twos),
                                    make_seq_bool(make_unary(UnaryOp::LogicalNot, id("ctrl_comp")))),
                       make_prop_seq(make_seq_bool(make_binary(BinaryOp::Eq, id("term"), id("mux_out"))))));
  CHECK(equal(*a.body, *expected));
  CHECK(a.label == "asrt_term_complement");
  REQUIRE(a.disable != nullptr);
  CHECK(equal(*a.disable, *id("tb_reset")));
}

TEST_CASE("term_complement parenthesized body is a conjunction") {
  Assertion orig = parse_assertion(testing::kTermComplementOriginal);
  Assertion paren = parse_assertion(testing::kTermComplementParenthesized);
  const auto *conj = std::get_if<PropAnd>(&paren.body->node);
  REQUIRE(conj != nullptr);
  CHECK(std::holds_alternative<PropImplication>(conj->lhs->node));
  CHECK(std::holds_alternative<PropImplication>(conj->rhs->node));
  CHECK_FALSE(equal(orig, paren));
}

TEST_CASE("printer makes the implicit grouping explicit") {
  Assertion orig = parse_assertion(testing::kTermComplementOriginal);
  std::string printed = print_assertion(orig);
  CHECK(printed ==
        "asrt_term_complement: assert property (@(posedge i_clk) disable iff (tb_reset) "
        "(ctrl_comp) |-> ((term == ~mux_out + 1 and !ctrl_comp) |-> (term == mux_out)));");
  check_round_trip(orig);
  check_round_trip(parse_assertion(testing::kTermComplementParenthesized));
  check_round_trip(parse_assertion(testing::kCmdBusy));
}

TEST_CASE("signals_of") {
  CHECK(signals_of(parse_assertion(testing::kCmdBusy)) ==
        std::vector<std::string>{"clk", "tb_reset", "cmd_valid", "busy"});
  CHECK(signals_of(parse_assertion("assert property (@(posedge c) 1'b1)")) ==
        std::vector<std::string>{"c"});
  CHECK(signals_of(parse_assertion(testing::kTermComplementOriginal)) ==
        std::vector<std::string>{"i_clk", "tb_reset", "ctrl_comp", "term", "mux_out"});
}

TEST_CASE("sequence operators") {
  Assertion a = parse_assertion("assert property (@(posedge clk) req ##[1:3] gnt[*2] |=> !req);");
  const auto &impl = std::get<PropImplication>(a.body->node);
  CHECK_FALSE(impl.overlapped);
  const auto &delay = std::get<SeqDelay>(impl.antecedent->node);
  CHECK(delay.lo == 1);
  CHECK(delay.hi == 3);
  const auto &rep = std::get<SeqRepeat>(delay.right->node);
  CHECK(rep.lo == 2);
  CHECK(rep.hi == 2);
  check_round_trip(a);

  Assertion b = parse_assertion("assert property (@(posedge clk) a |-> b |-> c);");
  const auto &outer = std::get<PropImplication>(b.body->node);
  CHECK(std::holds_alternative<PropImplication>(outer.consequent->node));

  Assertion c = parse_assertion("assert property (@(posedge clk) not a and b or c);");
  const auto &top = std::get<PropOr>(c.body->node);
  const auto &conj = std::get<PropAnd>(top.lhs->node);
  CHECK(std::holds_alternative<PropNot>(conj.lhs->node));
}

TEST_CASE("sampled-value functions") {
  Assertion a = parse_assertion(
      "assert property (@(posedge clk) $rose(a) |-> $past(b, 2) == $past(b) && $changed(c) && $fell(d));");
  check_round_trip(a);
  auto sig = signals_of(a);
  CHECK(sig == std::vector<std::string>{"clk", "a", "b", "c", "d"});
}

TEST_CASE("literals print in their base") {
  for (const char *lit : {"1'b1", "4'hf", "8'd200", "3'o7", "16'h0"}) {
    std::string text = std::string("assert property (@(posedge clk) x == ") + lit + ");";
    std::string printed = print_assertion(parse_assertion(text));
    CHECK(printed == text);
  }
  CHECK(print_bool(*parse_bool_expression("x == 'hff")) == "x == 255");
}

TEST_CASE("malformed input reports offset and expectations") {
  auto r = try_parse_assertion("assert property (@(posedge clk) a |-> );");
  REQUIRE(std::holds_alternative<ParseError>(r));
  const ParseError &e = std::get<ParseError>(r);
  CHECK(e.kind() == ErrorKind::Parse);
  CHECK(e.offset() == 38);

  auto again = try_parse_assertion("assert property (@(posedge clk) a |-> );");
  CHECK(std::get<ParseError>(again).offset() == e.offset());
  CHECK(std::string(std::get<ParseError>(again).what()) == e.what());

  CHECK(parse_error_kind("assert property (@(posedge clk) a") == ErrorKind::Parse);
  CHECK(parse_error_kind("assert property (posedge clk) a);") == ErrorKind::Parse);
  CHECK(parse_error_kind("assert property (@(posedge clk) 2'b111);") == ErrorKind::Parse);
}

TEST_CASE("unsupported constructs are distinguished from malformed input") {
  const char *cases[] = {
      "assert property (@(posedge clk) a[*]);",
      "assert property (@(posedge clk) a throughout b);",
      "assert property (@(posedge clk) s_eventually a);",
      "assert property (@(posedge clk) a ##[1:$] b);",
      "assert property (@(posedge clk) a[->2]);",
      "assert property (@(posedge clk) a[*0]);",
      "assume property (@(posedge clk) a);",
      "cover property (@(posedge clk) a);",
      "assert property (@(posedge clk) a * b);",
      "assert property (@(posedge clk) &a);",
      "assert property (@(posedge clk) a ? b : c);",
      "assert property (@(posedge clk) {a, b} == 2'b11);",
      "assert property (@(posedge clk) a ##20 b);",
      "assert property (@(posedge clk) a == 4'bx01z);",
  };
  for (const char *text : cases) {
    INFO(text);
    CHECK(parse_error_kind(text) == ErrorKind::UnsupportedConstruct);
  }
}

TEST_CASE("comments are ignored") {
  Assertion a = parse_assertion("// leading\np: assert property (/* clk */ @(posedge clk) a |-> b); // tail");
  Assertion b = parse_assertion("p: assert property (@(posedge clk) a |-> b);");
  CHECK(equal(a, b));
}

TEST_CASE("depth guard") {
  std::string deep = "assert property (@(posedge clk) ";
  for (int i = 0; i < 200; ++i)
    deep += "(";
  deep += "a";
  for (int i = 0; i < 200; ++i)
    deep += ")";
  deep += ");";
  CHECK(parse_error_kind(deep) == ErrorKind::Parse);
}

TEST_CASE("random ASTs round-trip") {
  testing::AstGen gen(7);
  for (int i = 0; i < 300; ++i)
    check_round_trip(gen.assertion());
}

TEST_CASE("extract_assertions") {
  CHECK(extract_assertions("").empty());

  std::string fenced = "Here is the SVA:\n```systemverilog\n" + testing::kCmdBusy + "\n```\nDone.";
  auto one = extract_assertions(fenced);
  REQUIRE(one.size() == 1);
  CHECK(one[0].parsed.has_value());
  CHECK(one[0].parsed->label == "asrt");

  std::string truncated = "bad: assert property (@(posedge clk) a |->";
  std::string two = "```\n" + testing::kCmdBusy + "\n```\nand\n```\n" + truncated + "\n```\n";
  auto cands = extract_assertions(two);
  REQUIRE(cands.size() == 2);
  CHECK(cands[0].parsed.has_value());
  CHECK(cands[1].error.has_value());
  CHECK(cands[1].text == truncated);

  auto bare = extract_assertions("first p1: assert property (@(posedge c) a); then "
                                 "assert property (@(posedge c) b |=> c); end");
  REQUIRE(bare.size() == 2);
  CHECK(bare[0].text == "p1: assert property (@(posedge c) a);");
  CHECK(bare[1].parsed.has_value());

  auto prose = extract_assertions("I cannot write this assertion.");
  CHECK(prose.empty());

  auto inline_fence = extract_assertions("<think>steps</think>```assert property(@(posedge c) 1'b1);```");
  REQUIRE(inline_fence.size() == 1);
  CHECK(inline_fence[0].parsed.has_value());
}

TEST_CASE("tokenize_lenient never throws") {
  auto toks = tokenize_lenient("a ##1 4'bx1 `define \xff \"str\"");
  CHECK(toks.size() >= 4);
  CHECK(toks[0] == "a");
  CHECK(toks[1] == "##");
}
