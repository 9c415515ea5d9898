// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/common/error.hpp"
#include "svaforge/common/overloaded.hpp"
#include "svaforge/rtl/design.hpp"
#include "svaforge/sva/lexer.hpp"
#include "svaforge/sva/parser.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace svaforge::rtl {

namespace {

using sva::TokenCursor;
using sva::TokenKind;

constexpr std::array<std::string_view, 16> kUnsupportedItems = {
    "always_comb", "always_latch", "initial",  "generate", "genvar",   "function",
    "task",        "integer",      "real",     "specify",  "defparam", "inout",
    "interface",   "class",        "assert",   "final",
};

// Directives (`timescale, `define, ...) are blanked rather than removed so
// token offsets still point into the original text.
std::string blank_directives(std::string_view text) {
  std::string out(text);
  bool line_start = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == '\n') {
      line_start = true;
      continue;
    }
    if (line_start && out[i] == '`') {
      while (i < out.size() && out[i] != '\n')
        out[i++] = ' ';
      line_start = true;
      continue;
    }
    if (out[i] != ' ' && out[i] != '\t')
      line_start = false;
  }
  return out;
}

struct Decl {
  bool is_port = false;
  bool in_header = false;
  std::optional<Direction> dir;
  NetKind kind = NetKind::Wire;
  bool kind_explicit = false;
  uint32_t width = 1;
  std::size_t order = 0;
};

class RtlParser {
public:
  explicit RtlParser(std::string_view text) : c_(sva::tokenize(blank_directives(text))) {}

  DesignUnit run() {
    check_module_count();
    c_.expect_word("module");
    d_.name = c_.expect_identifier("module name");
    if (c_.accept_punct("#"))
      parse_parameter_header();
    if (c_.accept_punct("("))
      parse_port_header();
    c_.expect_punct(";");
    while (!c_.is_word("endmodule")) {
      if (c_.at_end())
        c_.fail({"'endmodule'"}, "unexpected end of input inside module");
      parse_item();
    }
    c_.take();
    if (!c_.at_end())
      c_.fail({"end of input"}, "unexpected text after endmodule");
    finish();
    return std::move(d_);
  }

private:
  void check_module_count() {
    std::vector<std::string> names;
    for (std::size_t i = 0;; ++i) {
      const sva::Token &t = c_.peek(i);
      if (t.kind == TokenKind::End)
        break;
      if (t.kind == TokenKind::Identifier && (t.text == "module" || t.text == "macromodule")) {
        const sva::Token &n = c_.peek(i + 1);
        names.push_back(n.kind == TokenKind::Identifier ? n.text : "<anonymous>");
      }
    }
    if (names.size() > 1) {
      std::string extra;
      for (std::size_t i = 1; i < names.size(); ++i)
        extra += (i > 1 ? ", " : "") + names[i];
      throw Error(ErrorKind::MultipleModules, "expected a single module '" + names[0] +
                                                  "'; extra modules: " + extra);
    }
  }

  // `#( parameter A = 1, B = 2 )`
  void parse_parameter_header() {
    c_.expect_punct("(");
    while (!c_.accept_punct(")")) {
      c_.accept_word("parameter");
      c_.accept_word("localparam");
      skip_param_type();
      std::string name = c_.expect_identifier("parameter name");
      c_.expect_punct("=");
      params_[name] = const_expr();
      d_.parameters[name] = params_[name];
      if (!c_.is_punct(")"))
        c_.expect_punct(",");
    }
  }

  void skip_param_type() {
    if (c_.is_word("integer") || c_.is_word("int"))
      c_.take();
    if (c_.is_punct("["))
      parse_range();
  }

  void parse_port_header() {
    if (c_.accept_punct(")"))
      return;
    if (is_direction()) {
      // ANSI style.
      Direction dir = Direction::Input;
      NetKind kind = NetKind::Wire;
      bool kind_explicit = false;
      uint32_t width = 1;
      for (;;) {
        if (is_direction()) {
          if (c_.is_word("inout"))
            c_.unsupported("inout ports");
          dir = c_.take().text == "input" ? Direction::Input : Direction::Output;
          kind = NetKind::Wire;
          kind_explicit = false;
          width = 1;
          if (c_.is_word("wire") || c_.is_word("reg") || c_.is_word("logic")) {
            kind = c_.peek().text == "reg" ? NetKind::Reg : NetKind::Wire;
            kind_explicit = c_.take().text != "logic";
          }
          if (c_.is_word("signed"))
            c_.unsupported("signed ports");
          if (c_.is_punct("["))
            width = parse_range();
        }
        std::size_t off = c_.peek().offset;
        std::string name = c_.expect_identifier("port name");
        Decl &dcl = declare(name, off);
        dcl.is_port = true;
        dcl.in_header = true;
        dcl.dir = dir;
        dcl.kind = kind;
        dcl.kind_explicit = kind_explicit;
        dcl.width = width;
        port_order_.push_back(name);
        if (c_.accept_punct(")"))
          return;
        c_.expect_punct(",");
      }
    }
    for (;;) {
      std::size_t off = c_.peek().offset;
      std::string name = c_.expect_identifier("port name");
      Decl &dcl = declare(name, off);
      dcl.is_port = true;
      dcl.in_header = true;
      port_order_.push_back(name);
      if (c_.accept_punct(")"))
        return;
      c_.expect_punct(",");
    }
  }

  bool is_direction() const {
    return c_.is_word("input") || c_.is_word("output") || c_.is_word("inout");
  }

  Decl &declare(const std::string &name, std::size_t off) {
    if (decls_.count(name) || params_.count(name))
      throw ParseError(ErrorKind::Parse, off, {}, "duplicate declaration of '" + name + "'");
    Decl &d = decls_[name];
    d.order = next_order_++;
    return d;
  }

  // `[msb:lsb]`, returns the width.
  uint32_t parse_range() {
    std::size_t off = c_.peek().offset;
    c_.expect_punct("[");
    uint64_t msb = const_expr();
    c_.expect_punct(":");
    uint64_t lsb = const_expr();
    c_.expect_punct("]");
    if (lsb != 0)
      throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                            "unsupported construct: range with nonzero lsb");
    if (msb >= 64)
      throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                            "unsupported construct: signal wider than 64 bits");
    return static_cast<uint32_t>(msb + 1);
  }

  uint64_t const_expr() {
    std::size_t off = c_.peek().offset;
    sva::BoolPtr e = substitute(sva::parse_rtl_expression(c_), off, true);
    trace::CompiledBool cb(*e, [](const std::string &) { return std::nullopt; });
    struct NoSignals : trace::Sampler {
      uint64_t sample(std::size_t, uint32_t) const override { return 0; }
    } none;
    return cb.eval(none, 64);
  }

  sva::BoolPtr expr() {
    std::size_t off = c_.peek().offset;
    return substitute(sva::parse_rtl_expression(c_), off, false);
  }

  // Replaces parameter references with literals and checks that every other
  // identifier is declared (or, for constant expressions, rejects it).
  sva::BoolPtr substitute(const sva::BoolPtr &e, std::size_t off, bool constant) {
    return std::visit(
        overloaded{
            [&](const sva::Ident &n) -> sva::BoolPtr {
              auto p = params_.find(n.name);
              if (p != params_.end()) {
                if (n.select)
                  throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                                        "unsupported construct: select on parameter");
                return sva::make_literal(32, p->second, 'd', false);
              }
              if (constant)
                throw ParseError(ErrorKind::Parse, off, {"constant"},
                                      "'" + n.name + "' is not a constant");
              if (!decls_.count(n.name))
                throw Error(ErrorKind::UnknownSignal, "undeclared identifier '" + n.name + "'");
              return e;
            },
            [&](const sva::Literal &) { return e; },
            [&](const sva::Unary &n) { return sva::make_unary(n.op, substitute(n.operand, off, constant)); },
            [&](const sva::Binary &n) {
              return sva::make_binary(n.op, substitute(n.lhs, off, constant), substitute(n.rhs, off, constant));
            },
            [&](const sva::Past &) -> sva::BoolPtr { return e; },
            [&](const sva::Sampled &) -> sva::BoolPtr { return e; },
            [&](const sva::Cond &n) {
              return sva::make_cond(substitute(n.cond, off, constant), substitute(n.then_expr, off, constant),
                                    substitute(n.else_expr, off, constant));
            },
            [&](const sva::Concat &n) {
              std::vector<sva::BoolPtr> parts;
              for (const auto &p : n.parts)
                parts.push_back(substitute(p, off, constant));
              return sva::make_concat(std::move(parts));
            },
        },
        e->node);
  }

  void parse_item() {
    const sva::Token &t = c_.peek();
    if (t.kind != TokenKind::Identifier)
      c_.fail({"module item"}, "expected a module item but found '" + t.text + "'");
    for (auto w : kUnsupportedItems)
      if (t.text == w)
        c_.unsupported("'" + t.text + "'");
    if (t.text == "parameter" || t.text == "localparam")
      return parse_parameter_item();
    if (t.text == "input" || t.text == "output")
      return parse_direction_item();
    if (t.text == "wire" || t.text == "reg" || t.text == "logic")
      return parse_net_item();
    if (t.text == "assign")
      return parse_assign();
    if (t.text == "always" || t.text == "always_ff")
      return parse_always();
    if (c_.peek(1).kind == TokenKind::Identifier || c_.is_punct("#", 1))
      c_.unsupported("module instantiation");
    c_.fail({"module item"}, "expected a module item but found '" + t.text + "'");
  }

  void parse_parameter_item() {
    c_.take();
    skip_param_type();
    do {
      std::size_t off = c_.peek().offset;
      std::string name = c_.expect_identifier("parameter name");
      if (decls_.count(name) || params_.count(name))
        throw ParseError(ErrorKind::Parse, off, {}, "duplicate declaration of '" + name + "'");
      c_.expect_punct("=");
      params_[name] = const_expr();
      d_.parameters[name] = params_[name];
    } while (c_.accept_punct(","));
    c_.expect_punct(";");
  }

  void parse_direction_item() {
    Direction dir = c_.take().text == "input" ? Direction::Input : Direction::Output;
    NetKind kind = NetKind::Wire;
    bool kind_explicit = false;
    if (c_.is_word("wire") || c_.is_word("reg") || c_.is_word("logic")) {
      kind = c_.peek().text == "reg" ? NetKind::Reg : NetKind::Wire;
      kind_explicit = c_.take().text != "logic";
    }
    if (c_.is_word("signed"))
      c_.unsupported("signed ports");
    uint32_t width = c_.is_punct("[") ? parse_range() : 1;
    do {
      std::size_t off = c_.peek().offset;
      std::string name = c_.expect_identifier("port name");
      auto it = decls_.find(name);
      if (it == decls_.end() || !it->second.in_header)
        throw ParseError(ErrorKind::Parse, off, {},
                              "'" + name + "' is not in the module port list");
      if (it->second.dir)
        throw ParseError(ErrorKind::Parse, off, {}, "duplicate direction for '" + name + "'");
      it->second.dir = dir;
      it->second.width = width;
      if (kind_explicit) {
        it->second.kind = kind;
        it->second.kind_explicit = true;
      }
    } while (c_.accept_punct(","));
    c_.expect_punct(";");
  }

  void parse_net_item() {
    std::string type = c_.take().text;
    NetKind kind = type == "reg" ? NetKind::Reg : NetKind::Wire;
    if (c_.is_word("signed"))
      c_.unsupported("signed nets");
    uint32_t width = c_.is_punct("[") ? parse_range() : 1;
    do {
      std::size_t off = c_.peek().offset;
      std::string name = c_.expect_identifier("net name");
      auto it = decls_.find(name);
      if (it != decls_.end() && it->second.in_header && !it->second.kind_explicit) {
        // `output q; reg q;` style redeclaration of a header port.
        it->second.kind = kind;
        it->second.kind_explicit = type != "logic";
        if (c_.is_punct("["))
          c_.fail({"';'"}, "unexpected select");
        it->second.width = std::max(it->second.width, width);
      } else {
        Decl &dcl = declare(name, off);
        dcl.kind = kind;
        dcl.kind_explicit = type != "logic";
        dcl.width = width;
      }
      if (c_.is_punct("["))
        c_.unsupported("arrays and memories");
      if (c_.accept_punct("=")) {
        if (type == "reg")
          c_.unsupported("reg initializer");
        add_driver(name, "continuous assign", off);
        d_.assigns.push_back({name, expr(), off});
      }
    } while (c_.accept_punct(","));
    c_.expect_punct(";");
  }

  void parse_assign() {
    c_.take();
    if (c_.is_punct("#"))
      c_.unsupported("assignment delays");
    do {
      std::size_t off = c_.peek().offset;
      if (c_.is_punct("{"))
        c_.unsupported("concatenation on the left-hand side");
      std::string target = c_.expect_identifier("assign target");
      if (c_.is_punct("["))
        c_.unsupported("partial continuous assignment");
      c_.expect_punct("=");
      check_target(target, off);
      add_driver(target, "continuous assign", off);
      d_.assigns.push_back({target, expr(), off});
    } while (c_.accept_punct(","));
    c_.expect_punct(";");
  }

  void check_target(const std::string &target, std::size_t off) {
    auto it = decls_.find(target);
    if (it == decls_.end())
      throw Error(ErrorKind::UnknownSignal, "assignment to undeclared '" + target + "'");
    if (it->second.dir == Direction::Input)
      throw ParseError(ErrorKind::Parse, off, {}, "assignment to input '" + target + "'");
  }

  void add_driver(const std::string &target, const std::string &what, std::size_t off) {
    auto [it, inserted] = drivers_.emplace(target, std::make_pair(what, off));
    if (!inserted)
      throw Error(ErrorKind::MultipleDrivers, "'" + target + "' is driven by a " + it->second.first +
                                                  " at offset " + std::to_string(it->second.second) +
                                                  " and a " + what + " at offset " + std::to_string(off));
  }

  void parse_always() {
    std::size_t start = c_.take().offset;
    if (!c_.is_punct("@"))
      c_.unsupported("always block without an event control");
    c_.take();
    if (c_.is_punct("*"))
      c_.unsupported("combinational always block");
    c_.expect_punct("(");
    if (c_.is_punct("*"))
      c_.unsupported("combinational always block");
    std::vector<EdgeSpec> edges;
    for (;;) {
      EdgeSpec e;
      if (c_.accept_word("posedge"))
        e.edge = sva::Edge::Posedge;
      else if (c_.accept_word("negedge"))
        e.edge = sva::Edge::Negedge;
      else
        c_.unsupported("combinational always block");
      std::size_t off = c_.peek().offset;
      e.signal = c_.expect_identifier("event signal");
      auto it = decls_.find(e.signal);
      if (it == decls_.end())
        throw Error(ErrorKind::UnknownSignal, "undeclared event signal '" + e.signal + "'");
      if (it->second.dir != Direction::Input)
        throw ParseError(ErrorKind::UnsupportedConstruct, off, {},
                              "unsupported construct: edge on internal signal '" + e.signal + "'");
      edges.push_back(e);
      if (c_.accept_word("or") || c_.accept_punct(","))
        continue;
      break;
    }
    c_.expect_punct(")");
    if (edges.size() > 2)
      c_.unsupported("more than two edges in a sensitivity list");

    process_targets_.clear();
    StmtPtr body = stmt();

    SeqProcess p;
    p.body = body;
    p.clock = edges[0];
    if (edges.size() == 2) {
      // The edge signal tested by the top-level `if` is the reset.
      std::set<std::string> tested = top_if_signals(*body);
      bool first = tested.count(edges[0].signal) > 0;
      bool second = tested.count(edges[1].signal) > 0;
      if (first && !second)
        std::swap(edges[0], edges[1]);
      p.clock = edges[0];
      p.async_reset = edges[1];
      if (p.clock.signal == p.async_reset->signal)
        throw ParseError(ErrorKind::Parse, start, {}, "clock and reset are the same signal");
    }
    for (const auto &t : process_targets_)
      add_driver(t, "process", start);
    d_.processes.push_back(std::move(p));
  }

  static std::set<std::string> top_if_signals(const Stmt &s) {
    std::set<std::string> out;
    const Stmt *cur = &s;
    while (const auto *b = std::get_if<BlockStmt>(&cur->node)) {
      if (b->body.empty())
        return out;
      cur = b->body.front().get();
    }
    if (const auto *i = std::get_if<IfStmt>(&cur->node)) {
      std::vector<std::string> names;
      sva::collect_signals(*i->cond, names);
      out.insert(names.begin(), names.end());
    }
    return out;
  }

  StmtPtr stmt() {
    const sva::Token &t = c_.peek();
    if (t.kind == TokenKind::Punct && t.text == ";") {
      c_.take();
      return std::make_shared<Stmt>(Stmt{BlockStmt{}});
    }
    if (t.kind == TokenKind::System)
      c_.unsupported("system task '" + t.text + "'");
    if (t.kind == TokenKind::Punct && t.text == "{")
      c_.unsupported("concatenation on the left-hand side");
    if (t.kind != TokenKind::Identifier)
      c_.fail({"statement"}, "expected a statement but found '" + t.text + "'");
    if (t.text == "begin") {
      c_.take();
      if (c_.accept_punct(":"))
        c_.expect_identifier("block label");
      BlockStmt b;
      while (!c_.accept_word("end")) {
        if (c_.at_end())
          c_.fail({"'end'"}, "unexpected end of input inside begin/end");
        b.body.push_back(stmt());
      }
      if (c_.accept_punct(":"))
        c_.expect_identifier("block label");
      return std::make_shared<Stmt>(Stmt{std::move(b)});
    }
    if (t.text == "if") {
      c_.take();
      c_.expect_punct("(");
      IfStmt s;
      s.cond = expr();
      c_.expect_punct(")");
      s.then_branch = stmt();
      if (c_.accept_word("else"))
        s.else_branch = stmt();
      return std::make_shared<Stmt>(Stmt{std::move(s)});
    }
    if (t.text == "case")
      return case_stmt();
    if (t.text == "casez" || t.text == "casex" || t.text == "unique" || t.text == "priority")
      c_.unsupported("'" + t.text + "'");
    if (t.text == "for" || t.text == "while" || t.text == "repeat" || t.text == "forever")
      c_.unsupported("loops");
    if (t.text == "fork" || t.text == "wait" || t.text == "disable")
      c_.unsupported("'" + t.text + "'");

    std::size_t off = t.offset;
    std::string target = c_.take().text;
    if (c_.is_punct("["))
      c_.unsupported("partial register assignment");
    if (c_.is_punct("="))
      c_.unsupported("blocking assignment in an edge-triggered process");
    if (!c_.accept_punct("<="))
      c_.fail({"'<='"}, "expected '<=' after assignment target");
    if (c_.is_punct("#"))
      c_.unsupported("assignment delays");
    check_target(target, off);
    process_targets_.insert(target);
    NonblockingAssign a{target, expr()};
    c_.expect_punct(";");
    return std::make_shared<Stmt>(Stmt{std::move(a)});
  }

  StmtPtr case_stmt() {
    c_.take();
    c_.expect_punct("(");
    CaseStmt s;
    s.subject = expr();
    c_.expect_punct(")");
    bool seen_default = false;
    while (!c_.accept_word("endcase")) {
      if (c_.at_end())
        c_.fail({"'endcase'"}, "unexpected end of input inside case");
      CaseItem item;
      if (c_.accept_word("default")) {
        if (seen_default)
          c_.fail({}, "duplicate default item");
        seen_default = true;
        c_.accept_punct(":");
      } else {
        do
          item.labels.push_back(expr());
        while (c_.accept_punct(","));
        c_.expect_punct(":");
      }
      item.body = stmt();
      s.items.push_back(std::move(item));
    }
    return std::make_shared<Stmt>(Stmt{std::move(s)});
  }

  void finish() {
    std::vector<std::pair<std::size_t, std::string>> order;
    for (const auto &[name, dcl] : decls_)
      order.emplace_back(dcl.order, name);
    std::sort(order.begin(), order.end());
    for (const std::string &name : port_order_) {
      const Decl &dcl = decls_.at(name);
      if (!dcl.dir)
        throw Error(ErrorKind::Design, "port '" + name + "' has no direction declaration");
      Port p{name, *dcl.dir, dcl.kind, dcl.width};
      if (!dcl.kind_explicit && drivers_.count(name) && drivers_.at(name).first == "process")
        p.kind = NetKind::Reg;
      d_.ports.push_back(p);
    }
    for (const auto &[_, name] : order) {
      const Decl &dcl = decls_.at(name);
      if (dcl.is_port)
        continue;
      Net n{name, dcl.kind, dcl.width};
      if (!dcl.kind_explicit && drivers_.count(name) && drivers_.at(name).first == "process")
        n.kind = NetKind::Reg;
      d_.nets.push_back(n);
    }
  }

  TokenCursor c_;
  DesignUnit d_;
  std::map<std::string, uint64_t> params_;
  std::map<std::string, Decl> decls_;
  std::vector<std::string> port_order_;
  std::size_t next_order_ = 0;
  std::map<std::string, std::pair<std::string, std::size_t>> drivers_;
  std::set<std::string> process_targets_;
};

} // namespace

DesignUnit parse_design(std::string_view text, const std::vector<std::string> &reset_patterns) {
  DesignUnit d = RtlParser(text).run();
  d.source = std::string(text);
  ClockReset cr = detect_clock_reset(d, reset_patterns);
  d.clock = cr.clock;
  d.reset = cr.reset;
  d.clock_issue = cr.issue;
  Simulator check(d); // rejects combinational cycles up front
  return d;
}

} // namespace svaforge::rtl
