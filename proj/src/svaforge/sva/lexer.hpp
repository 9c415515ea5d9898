// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace svaforge::sva {

enum class TokenKind {
  Identifier, // C-style identifiers and keywords
  System,     // `$name`; bare `$` has empty text after the dollar
  Number,     // sized/based or bare decimal literal
  Punct,      // operators and delimiters
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t offset = 0;
  // Number tokens only.
  uint32_t width = 32;
  uint64_t value = 0;
  char base = 'd';
  bool sized = false;
};

/// Tokenizes Verilog/SVA text. Line and block comments are skipped. Throws
/// ParseError on characters that start no token and on malformed literals.
std::vector<Token> tokenize(std::string_view text);

/// Tokenizer that never throws: unknown characters become single-character
/// Punct tokens and malformed literals are kept verbatim. Used for n-gram
/// statistics over arbitrary text.
std::vector<std::string> tokenize_lenient(std::string_view text);

} // namespace svaforge::sva
