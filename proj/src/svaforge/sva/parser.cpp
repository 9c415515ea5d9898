// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/sva/parser.hpp"

#include <array>
#include <memory>

namespace svaforge::sva {

//===----------------------------------------------------------------------===//
// TokenCursor
//===----------------------------------------------------------------------===//

namespace {

std::string describe(const Token &t) {
  if (t.kind == TokenKind::End)
    return "end of input";
  return "'" + t.text + "'";
}

} // namespace

void TokenCursor::fail(std::vector<std::string> expected, const std::string &message) const {
  throw ParseError(ErrorKind::Parse, peek().offset, std::move(expected), message);
}

void TokenCursor::unsupported(const std::string &what) const {
  throw ParseError(ErrorKind::UnsupportedConstruct, peek().offset, {},
                   "unsupported construct: " + what);
}

void TokenCursor::expect_punct(std::string_view p) {
  if (!accept_punct(p))
    fail({"'" + std::string(p) + "'"},
         "expected '" + std::string(p) + "' but found " + describe(peek()));
}

void TokenCursor::expect_word(std::string_view w) {
  if (!accept_word(w))
    fail({"'" + std::string(w) + "'"},
         "expected '" + std::string(w) + "' but found " + describe(peek()));
}

std::string TokenCursor::expect_identifier(std::string_view what) {
  if (peek().kind != TokenKind::Identifier)
    fail({"identifier"}, "expected " + std::string(what) + " but found " + describe(peek()));
  return take().text;
}

uint64_t TokenCursor::expect_decimal(std::string_view what) {
  const Token &t = peek();
  if (t.kind != TokenKind::Number)
    fail({"number"}, "expected " + std::string(what) + " but found " + describe(t));
  return take().value;
}

namespace {

enum class Mode { Assertion, Rtl };

constexpr std::array<std::string_view, 9> kUnsupportedInfix = {
    "throughout", "within", "intersect", "until",  "s_until",
    "until_with", "s_until_with", "implies", "iff",
};

constexpr std::array<std::string_view, 14> kUnsupportedPrefix = {
    "s_eventually",   "eventually",     "always",         "s_always",   "nexttime",
    "s_nexttime",     "first_match",    "strong",         "weak",       "accept_on",
    "reject_on",      "sync_accept_on", "sync_reject_on", "case",
};

constexpr std::array<std::string_view, 12> kReserved = {
    "not",     "and",     "or",      "assert", "property", "disable",
    "posedge", "negedge", "if",      "else",   "begin",    "end",
};

template <std::size_t N> bool contains(const std::array<std::string_view, N> &set, std::string_view w) {
  for (auto s : set)
    if (s == w)
      return true;
  return false;
}

struct PNode;
using PNodePtr = std::shared_ptr<PNode>;

// Untyped parse tree; classified into property/sequence/boolean afterwards
// because a parenthesized group may hold any of the three.
struct PNode {
  enum class Kind { Bool, Delay, Repeat, Not, And, Or, Impl };
  Kind kind = Kind::Bool;
  std::size_t offset = 0;
  BoolPtr expr;
  uint32_t lo = 0;
  uint32_t hi = 0;
  bool overlapped = true;
  PNodePtr lhs;
  PNodePtr rhs;
};

PNodePtr bool_node(BoolPtr e, std::size_t offset) {
  auto n = std::make_shared<PNode>();
  n->kind = PNode::Kind::Bool;
  n->expr = std::move(e);
  n->offset = offset;
  return n;
}

PNodePtr binary_node(PNode::Kind kind, PNodePtr lhs, PNodePtr rhs, std::size_t offset) {
  auto n = std::make_shared<PNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->offset = offset;
  return n;
}

struct BinaryInfo {
  int prec = 0;
  BinaryOp op = BinaryOp::Add;
};

BinaryInfo binary_info(const Token &t) {
  if (t.kind != TokenKind::Punct)
    return {};
  const std::string &s = t.text;
  if (s == "||") return {1, BinaryOp::LogicalOr};
  if (s == "&&") return {2, BinaryOp::LogicalAnd};
  if (s == "|") return {3, BinaryOp::BitOr};
  if (s == "^") return {4, BinaryOp::BitXor};
  if (s == "&") return {5, BinaryOp::BitAnd};
  if (s == "==") return {6, BinaryOp::Eq};
  if (s == "!=") return {6, BinaryOp::Ne};
  if (s == "<") return {7, BinaryOp::Lt};
  if (s == "<=") return {7, BinaryOp::Le};
  if (s == ">") return {7, BinaryOp::Gt};
  if (s == ">=") return {7, BinaryOp::Ge};
  if (s == "<<") return {8, BinaryOp::Shl};
  if (s == ">>") return {8, BinaryOp::Shr};
  if (s == "+") return {9, BinaryOp::Add};
  if (s == "-") return {9, BinaryOp::Sub};
  return {};
}

bool is_unsupported_operator(const Token &t) {
  if (t.kind != TokenKind::Punct)
    return false;
  static constexpr std::array<std::string_view, 12> ops = {
      "*", "/", "%", "===", "!==", "<<<", ">>>", "~^", "^~", "->", "#-#", "#=#"};
  for (auto op : ops)
    if (t.text == op)
      return true;
  return false;
}

class Parser {
public:
  Parser(TokenCursor &cursor, Mode mode, const ParseOptions &opts)
      : c_(cursor), mode_(mode), opts_(opts) {}

  // Loosest level: right-associative implication.
  PNodePtr parse_property() {
    Guard g(*this);
    PNodePtr lhs = parse_or();
    if (c_.is_punct("|->") || c_.is_punct("|=>")) {
      std::size_t off = c_.peek().offset;
      bool overlapped = c_.take().text == "|->";
      PNodePtr rhs = parse_property();
      auto n = binary_node(PNode::Kind::Impl, lhs, rhs, off);
      n->overlapped = overlapped;
      return n;
    }
    check_unsupported_infix();
    return lhs;
  }

  BoolPtr parse_rtl() {
    Guard g(*this);
    PNodePtr cond = parse_bool(1);
    if (c_.accept_punct("?")) {
      BoolPtr then_expr = parse_rtl();
      c_.expect_punct(":");
      BoolPtr else_expr = parse_rtl();
      return make_cond(as_bool(cond), std::move(then_expr), std::move(else_expr));
    }
    return as_bool(cond);
  }

  BoolPtr as_bool(const PNodePtr &n) const {
    if (n->kind != PNode::Kind::Bool)
      throw ParseError(ErrorKind::Parse, n->offset, {"boolean expression"},
                       "sequence or property used where a boolean expression is required");
    return n->expr;
  }

  PropPtr to_property(const PNode &n) const {
    switch (n.kind) {
    case PNode::Kind::Impl:
      return make_implication(n.overlapped, to_sequence(*n.lhs), to_property(*n.rhs));
    case PNode::Kind::And:
      return make_prop_and(to_property(*n.lhs), to_property(*n.rhs));
    case PNode::Kind::Or:
      return make_prop_or(to_property(*n.lhs), to_property(*n.rhs));
    case PNode::Kind::Not:
      return make_prop_not(to_property(*n.lhs));
    default:
      return make_prop_seq(to_sequence(n));
    }
  }

  SeqPtr to_sequence(const PNode &n) const {
    switch (n.kind) {
    case PNode::Kind::Bool:
      return make_seq_bool(n.expr);
    case PNode::Kind::Delay:
      return make_delay(n.lo, n.hi, n.lhs ? to_sequence(*n.lhs) : nullptr, to_sequence(*n.rhs));
    case PNode::Kind::Repeat:
      return make_repeat(to_sequence(*n.lhs), n.lo, n.hi);
    case PNode::Kind::And:
      return make_seq_and(to_sequence(*n.lhs), to_sequence(*n.rhs));
    case PNode::Kind::Or:
      return make_seq_or(to_sequence(*n.lhs), to_sequence(*n.rhs));
    case PNode::Kind::Not:
    case PNode::Kind::Impl:
      break;
    }
    throw ParseError(ErrorKind::Parse, n.offset, {"sequence expression"},
                     "property operator used where a sequence is required");
  }

private:
  struct Guard {
    explicit Guard(Parser &p) : p_(p) {
      if (++p_.depth_ > 4 * p_.opts_.max_depth + 16)
        p_.c_.fail({}, "expression nesting is too deep");
    }
    ~Guard() { --p_.depth_; }
    Parser &p_;
  };

  void check_unsupported_infix() const {
    const Token &t = c_.peek();
    if (t.kind == TokenKind::Identifier && contains(kUnsupportedInfix, t.text))
      c_.unsupported("'" + t.text + "' operator");
    if (t.kind == TokenKind::Punct && (t.text == "#-#" || t.text == "#=#"))
      c_.unsupported("'" + t.text + "' operator");
  }

  PNodePtr parse_or() {
    PNodePtr lhs = parse_and();
    while (c_.is_word("or")) {
      std::size_t off = c_.take().offset;
      lhs = binary_node(PNode::Kind::Or, lhs, parse_and(), off);
    }
    check_unsupported_infix();
    return lhs;
  }

  PNodePtr parse_and() {
    PNodePtr lhs = parse_not();
    while (c_.is_word("and")) {
      std::size_t off = c_.take().offset;
      lhs = binary_node(PNode::Kind::And, lhs, parse_not(), off);
    }
    check_unsupported_infix();
    return lhs;
  }

  PNodePtr parse_not() {
    Guard g(*this);
    if (c_.is_word("not")) {
      std::size_t off = c_.take().offset;
      auto n = std::make_shared<PNode>();
      n->kind = PNode::Kind::Not;
      n->offset = off;
      n->lhs = parse_not();
      return n;
    }
    return parse_delay();
  }

  std::pair<uint32_t, uint32_t> parse_delay_range() {
    const Token &t = c_.peek();
    uint64_t lo = 0, hi = 0;
    if (t.kind == TokenKind::Number) {
      lo = hi = c_.take().value;
    } else if (c_.is_punct("[")) {
      c_.take();
      lo = c_.expect_decimal("delay lower bound");
      c_.expect_punct(":");
      if (c_.peek().kind == TokenKind::System && c_.peek().text == "$")
        c_.unsupported("unbounded delay range");
      hi = c_.expect_decimal("delay upper bound");
      c_.expect_punct("]");
    } else if (c_.is_punct("[*") || c_.is_punct("[+")) {
      c_.unsupported("unbounded delay shorthand");
    } else if (t.kind == TokenKind::Identifier) {
      c_.unsupported("delay by named constant");
    } else {
      c_.fail({"number", "'['"}, "expected delay value after '##' but found " + describe(t));
    }
    if (lo > hi)
      c_.fail({}, "delay range lower bound exceeds upper bound");
    if (hi > opts_.max_delay)
      c_.unsupported("delay beyond " + std::to_string(opts_.max_delay) + " cycles");
    return {static_cast<uint32_t>(lo), static_cast<uint32_t>(hi)};
  }

  PNodePtr parse_delay() {
    PNodePtr node;
    if (c_.is_punct("##")) {
      std::size_t off = c_.take().offset;
      auto [lo, hi] = parse_delay_range();
      node = binary_node(PNode::Kind::Delay, nullptr, parse_repeat(), off);
      node->lo = lo;
      node->hi = hi;
    } else {
      node = parse_repeat();
    }
    while (c_.is_punct("##")) {
      std::size_t off = c_.take().offset;
      auto [lo, hi] = parse_delay_range();
      node = binary_node(PNode::Kind::Delay, node, parse_repeat(), off);
      node->lo = lo;
      node->hi = hi;
    }
    return node;
  }

  PNodePtr parse_repeat() {
    PNodePtr node = parse_bool(1);
    for (;;) {
      if (c_.is_punct("[=") || c_.is_punct("[->"))
        c_.unsupported("non-consecutive or goto repetition");
      if (c_.is_punct("[+"))
        c_.unsupported("unbounded repetition");
      if (!c_.is_punct("[*"))
        break;
      std::size_t off = c_.take().offset;
      if (c_.is_punct("]"))
        c_.unsupported("unbounded repetition");
      uint64_t lo = c_.expect_decimal("repetition count");
      uint64_t hi = lo;
      if (c_.accept_punct(":")) {
        if (c_.peek().kind == TokenKind::System && c_.peek().text == "$")
          c_.unsupported("unbounded repetition");
        hi = c_.expect_decimal("repetition upper bound");
      }
      c_.expect_punct("]");
      if (lo == 0)
        throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                         "unsupported construct: zero repetition");
      if (lo > hi)
        throw ParseError(ErrorKind::Parse, off, {}, "repetition lower bound exceeds upper bound");
      if (hi > opts_.max_delay)
        throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                         "unsupported construct: repetition beyond " +
                             std::to_string(opts_.max_delay));
      auto n = std::make_shared<PNode>();
      n->kind = PNode::Kind::Repeat;
      n->offset = off;
      n->lhs = node;
      n->lo = static_cast<uint32_t>(lo);
      n->hi = static_cast<uint32_t>(hi);
      node = n;
    }
    return node;
  }

  PNodePtr parse_bool(int min_prec) {
    Guard g(*this);
    PNodePtr lhs = parse_unary();
    for (;;) {
      const Token &t = c_.peek();
      if (is_unsupported_operator(t))
        c_.unsupported("operator '" + t.text + "'");
      if (mode_ == Mode::Assertion && t.kind == TokenKind::Punct && t.text == "?")
        c_.unsupported("conditional operator in assertions");
      BinaryInfo info = binary_info(t);
      if (info.prec == 0 || info.prec < min_prec)
        break;
      std::size_t off = c_.take().offset;
      PNodePtr rhs = parse_bool(info.prec + 1);
      lhs = bool_node(make_binary(info.op, as_bool(lhs), as_bool(rhs)), off);
    }
    return lhs;
  }

  PNodePtr parse_unary() {
    Guard g(*this);
    const Token &t = c_.peek();
    if (t.kind == TokenKind::Punct) {
      std::optional<UnaryOp> op;
      if (t.text == "!")
        op = UnaryOp::LogicalNot;
      else if (t.text == "~")
        op = UnaryOp::BitwiseNot;
      else if (t.text == "-")
        op = UnaryOp::Negate;
      else if (t.text == "&" || t.text == "|" || t.text == "^" || t.text == "~^" ||
               t.text == "^~")
        c_.unsupported("reduction operator '" + t.text + "'");
      else if (t.text == "+")
        c_.unsupported("unary plus");
      if (op) {
        std::size_t off = c_.take().offset;
        return bool_node(make_unary(*op, as_bool(parse_unary())), off);
      }
    }
    return parse_primary();
  }

  PNodePtr parse_primary() {
    Guard g(*this);
    const Token &t = c_.peek();
    std::size_t off = t.offset;
    switch (t.kind) {
    case TokenKind::Identifier: {
      if (contains(kUnsupportedPrefix, t.text) || contains(kUnsupportedInfix, t.text))
        c_.unsupported("'" + t.text + "'");
      if (contains(kReserved, t.text))
        c_.fail({"expression"}, "expected expression but found " + describe(t));
      std::string name = c_.take().text;
      if (c_.is_punct("(") && mode_ == Mode::Rtl)
        c_.unsupported("function call");
      if (c_.is_punct("(") && mode_ == Mode::Assertion)
        c_.unsupported("sequence or property instance");
      std::optional<Select> select;
      if (c_.is_punct("[")) {
        c_.take();
        if (c_.peek().kind != TokenKind::Number)
          c_.unsupported("non-constant bit select");
        uint64_t msb = c_.take().value;
        uint64_t lsb = msb;
        bool part = false;
        if (c_.accept_punct(":")) {
          if (c_.peek().kind != TokenKind::Number)
            c_.unsupported("non-constant part select");
          lsb = c_.take().value;
          part = true;
          if (lsb > msb)
            c_.fail({}, "part select must be [msb:lsb] with msb >= lsb");
        } else if (c_.is_punct("+") || c_.is_punct("-")) {
          c_.unsupported("indexed part select");
        }
        if (msb > 63)
          c_.unsupported("bit select beyond bit 63");
        c_.expect_punct("]");
        select = Select{static_cast<uint32_t>(msb), static_cast<uint32_t>(lsb), part};
      }
      return bool_node(make_ident(std::move(name), select), off);
    }
    case TokenKind::Number: {
      Token num = c_.take();
      return bool_node(make_literal(num.width, num.value, num.base, num.sized), off);
    }
    case TokenKind::System:
      return parse_system_call();
    case TokenKind::Punct:
      if (t.text == "(") {
        c_.take();
        if (mode_ == Mode::Rtl) {
          BoolPtr inner = parse_rtl();
          c_.expect_punct(")");
          return bool_node(std::move(inner), off);
        }
        PNodePtr inner = parse_property();
        c_.expect_punct(")");
        return inner;
      }
      if (t.text == "{") {
        if (mode_ == Mode::Assertion)
          c_.unsupported("concatenation in assertions");
        c_.take();
        std::vector<BoolPtr> parts;
        do {
          if (c_.peek().kind == TokenKind::Number && c_.is_punct("{", 1))
            c_.unsupported("replication");
          parts.push_back(parse_rtl());
        } while (c_.accept_punct(","));
        c_.expect_punct("}");
        return bool_node(make_concat(std::move(parts)), off);
      }
      if (t.text == "#-#" || t.text == "#=#")
        c_.unsupported("'" + t.text + "' operator");
      if (t.text == "'")
        c_.unsupported("fill literal");
      break;
    case TokenKind::End:
      break;
    }
    c_.fail({"identifier", "literal", "'('"}, "expected expression but found " + describe(t));
  }

  PNodePtr parse_system_call() {
    Token t = c_.take();
    std::size_t off = t.offset;
    if (mode_ == Mode::Rtl)
      throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                       "unsupported construct: system function in RTL");
    if (t.text == "$")
      throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                       "unsupported construct: unbounded '$'");
    const bool known = t.text == "$past" || t.text == "$rose" || t.text == "$fell" ||
                       t.text == "$stable" || t.text == "$changed";
    if (!known)
      throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                       "unsupported construct: system function " + t.text);
    c_.expect_punct("(");
    BoolPtr arg = as_bool(parse_property());
    if (t.text == "$past") {
      uint32_t depth = 1;
      if (c_.accept_punct(",")) {
        uint64_t d = c_.expect_decimal("$past depth");
        if (d < 1)
          throw ParseError(ErrorKind::Parse, off, {}, "$past depth must be at least 1");
        if (d > opts_.max_delay)
          throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                           "unsupported construct: $past depth beyond " +
                               std::to_string(opts_.max_delay));
        depth = static_cast<uint32_t>(d);
        if (c_.is_punct(","))
          c_.unsupported("$past with gating or clocking arguments");
      }
      c_.expect_punct(")");
      return bool_node(make_past(std::move(arg), depth), off);
    }
    if (c_.is_punct(","))
      c_.unsupported("explicit clocking argument to " + t.text);
    c_.expect_punct(")");
    if (t.text == "$rose")
      return bool_node(make_sampled(SampledFn::Rose, std::move(arg)), off);
    if (t.text == "$fell")
      return bool_node(make_sampled(SampledFn::Fell, std::move(arg)), off);
    BoolPtr stable = make_sampled(SampledFn::Stable, std::move(arg));
    if (t.text == "$changed")
      return bool_node(make_unary(UnaryOp::LogicalNot, std::move(stable)), off);
    return bool_node(std::move(stable), off);
  }

  TokenCursor &c_;
  Mode mode_;
  ParseOptions opts_;
  std::size_t depth_ = 0;
};

} // namespace

Assertion parse_assertion(std::string_view text, const ParseOptions &opts) {
  TokenCursor c(tokenize(text));
  Parser p(c, Mode::Assertion, opts);
  Assertion a;
  const std::size_t start = c.peek().offset;

  if (c.peek().kind == TokenKind::Identifier && c.is_punct(":", 1) &&
      !contains(kReserved, c.peek().text)) {
    a.label = c.take().text;
    c.take();
  }
  if (c.is_word("assume") || c.is_word("cover") || c.is_word("restrict"))
    c.unsupported("'" + c.peek().text + "' directives");
  if (c.is_word("property") || c.is_word("sequence"))
    c.unsupported("named property or sequence declarations");
  c.expect_word("assert");
  if (!c.is_word("property")) {
    if (c.is_punct("(") || c.is_punct("#") || c.is_word("final"))
      c.unsupported("immediate or deferred assertions");
    c.expect_word("property");
  }
  c.take();
  c.expect_punct("(");

  if (!c.is_punct("@"))
    c.fail({"'@'"}, "expected clocking event '@(...)' but found " + describe(c.peek()));
  c.take();
  c.expect_punct("(");
  if (c.accept_word("posedge")) {
    a.clock.edge = Edge::Posedge;
  } else if (c.accept_word("negedge")) {
    a.clock.edge = Edge::Negedge;
  } else if (c.is_word("edge") || c.peek().kind == TokenKind::Identifier) {
    c.unsupported("clocking event without posedge/negedge");
  } else {
    c.fail({"'posedge'", "'negedge'"}, "expected clock edge but found " + describe(c.peek()));
  }
  a.clock.signal = c.expect_identifier("clock signal");
  if (c.is_word("or") || c.is_punct(",") || c.is_word("iff"))
    c.unsupported("multi-signal or gated clocking event");
  c.expect_punct(")");
  if (c.is_punct("@"))
    c.unsupported("multiclock properties");

  if (c.accept_word("disable")) {
    c.expect_word("iff");
    c.expect_punct("(");
    a.disable = p.as_bool(p.parse_property());
    c.expect_punct(")");
  }

  PNodePtr body = p.parse_property();
  a.body = p.to_property(*body);
  if (depth_of(*a.body) > opts.max_depth)
    throw ParseError(ErrorKind::Parse, body->offset, {},
                     "property nesting exceeds " + std::to_string(opts.max_depth));
  c.expect_punct(")");
  if (c.is_word("else"))
    c.unsupported("assertion action blocks");
  std::size_t end = c.peek().offset;
  if (c.is_punct(";")) {
    end = c.peek().offset + 1;
    c.take();
  } else if (!c.at_end()) {
    c.fail({"';'"}, "expected ';' but found " + describe(c.peek()));
  }
  if (!c.at_end())
    c.fail({"end of input"}, "unexpected text after assertion: " + describe(c.peek()));
  a.source_span = {start, end};
  return a;
}

std::variant<Assertion, ParseError> try_parse_assertion(std::string_view text,
                                                        const ParseOptions &opts) {
  try {
    return parse_assertion(text, opts);
  } catch (const ParseError &e) {
    return e;
  }
}

BoolPtr parse_bool_expression(std::string_view text) {
  TokenCursor c(tokenize(text));
  Parser p(c, Mode::Assertion, ParseOptions{});
  BoolPtr e = p.as_bool(p.parse_property());
  if (!c.at_end())
    c.fail({"end of input"}, "unexpected text after expression: " + describe(c.peek()));
  return e;
}

BoolPtr parse_rtl_expression(TokenCursor &cursor) {
  Parser p(cursor, Mode::Rtl, ParseOptions{});
  return p.parse_rtl();
}

} // namespace svaforge::sva
