// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/common/error.hpp"
#include "svaforge/sva/ast.hpp"
#include "svaforge/sva/lexer.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace svaforge::sva {

struct ParseOptions {
  std::size_t max_depth = kDefaultMaxDepth;
  uint32_t max_delay = kDefaultMaxDelay;
};

/// Parses one assertion item:
///
///   [label :] assert property ( @(edge clk) [disable iff (e)] P ) ;
///
/// Operator binding, tightest first: boolean operators (Verilog precedence),
/// `[*]`, `##`, `not`, `and`, `or`, then right-associative `|->`/`|=>`.
/// Throws ParseError; constructs outside the subset raise a ParseError whose
/// kind() is ErrorKind::UnsupportedConstruct.
Assertion parse_assertion(std::string_view text, const ParseOptions &opts = {});

/// Non-throwing variant.
std::variant<Assertion, ParseError> try_parse_assertion(std::string_view text,
                                                        const ParseOptions &opts = {});

/// Parses a standalone boolean expression (assertion subset).
BoolPtr parse_bool_expression(std::string_view text);

/// Cursor over a token vector; shared with the RTL parser.
class TokenCursor {
public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token &peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token &take() {
    const Token &t = peek();
    if (pos_ < tokens_.size() - 1)
      ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::Punct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::Identifier && peek(ahead).text == w;
  }
  bool accept_punct(std::string_view p) {
    if (!is_punct(p))
      return false;
    take();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!is_word(w))
      return false;
    take();
    return true;
  }
  void expect_punct(std::string_view p);
  void expect_word(std::string_view w);
  std::string expect_identifier(std::string_view what);
  uint64_t expect_decimal(std::string_view what);

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string &message) const;
  [[noreturn]] void unsupported(const std::string &what) const;

  std::size_t position() const { return pos_; }
  void reset(std::size_t pos) { pos_ = pos; }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Parses a Verilog expression for rtl-lite: the assertion boolean operators
/// plus `?:` and `{...}` concatenation, without sampled-value functions.
BoolPtr parse_rtl_expression(TokenCursor &cursor);

} // namespace svaforge::sva
