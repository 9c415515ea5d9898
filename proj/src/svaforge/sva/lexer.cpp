// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/sva/lexer.hpp"

#include "svaforge/common/error.hpp"

#include <array>
#include <cctype>

namespace svaforge::sva {

namespace {

// Longest first; a prefix must come after every longer punctuator sharing it.
constexpr std::array<std::string_view, 36> kPuncts = {
    "|->", "|=>", "===", "!==", "<<<", ">>>", "[->", "[*", "[=", "[+", "##", "#-#",
    "#=#", "==",  "!=",  "<=",  ">=",  "&&",  "||",  "<<", ">>", "->", "~^", "^~",
    "::",  "(",   ")",   "[",   "]",   "{",   "}",   ",",  ";",  ":",  "@",  "#",
};

constexpr std::string_view kSingles = "!~-+&|^<>=?*/%.'";

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
public:
  Lexer(std::string_view text, bool lenient) : text_(text), lenient_(lenient) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= text_.size())
        break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.offset = text_.size();
    out.push_back(end);
    return out;
  }

private:
  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        std::size_t close = text_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
          if (!lenient_)
            throw ParseError(ErrorKind::Parse, pos_, {"*/"}, "unterminated block comment");
          pos_ = text_.size();
        } else {
          pos_ = close + 2;
        }
      } else {
        break;
      }
    }
  }

  Token next() {
    Token tok;
    tok.offset = pos_;
    char c = text_[pos_];
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_]))
        ++pos_;
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(text_.substr(start, pos_ - start));
      return tok;
    }
    if (c == '$') {
      std::size_t start = pos_++;
      while (pos_ < text_.size() && is_ident_char(text_[pos_]))
        ++pos_;
      tok.kind = TokenKind::System;
      tok.text = std::string(text_.substr(start, pos_ - start));
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '\'' && based_follows(pos_ + 1)))
      return number();
    for (std::string_view p : kPuncts) {
      if (text_.substr(pos_, p.size()) == p) {
        pos_ += p.size();
        tok.kind = TokenKind::Punct;
        tok.text = std::string(p);
        return tok;
      }
    }
    if (kSingles.find(c) != std::string_view::npos || lenient_) {
      ++pos_;
      tok.kind = TokenKind::Punct;
      tok.text = std::string(1, c);
      return tok;
    }
    throw ParseError(ErrorKind::Parse, pos_, {}, std::string("unexpected character '") + c + "'");
  }

  bool based_follows(std::size_t at) const {
    if (at < text_.size() && (text_[at] == 's' || text_[at] == 'S'))
      ++at;
    if (at >= text_.size())
      return false;
    char b = static_cast<char>(std::tolower(static_cast<unsigned char>(text_[at])));
    return b == 'b' || b == 'd' || b == 'h' || b == 'o';
  }

  Token malformed(Token tok, std::size_t start, const std::string &why) {
    if (!lenient_)
      throw ParseError(ErrorKind::Parse, start, {}, why);
    tok.kind = TokenKind::Number;
    tok.text = std::string(text_.substr(start, pos_ - start));
    return tok;
  }

  Token number() {
    Token tok;
    tok.kind = TokenKind::Number;
    std::size_t start = pos_;
    tok.offset = start;
    uint64_t size = 0;
    bool have_size = false;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      if (text_[pos_] != '_') {
        size = size * 10 + static_cast<uint64_t>(text_[pos_] - '0');
        if (size > (uint64_t{1} << 40))
          return malformed(tok, start, "numeric literal too large");
      }
      have_size = true;
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '\'' && based_follows(pos_ + 1)) {
      ++pos_;
      if (text_[pos_] == 's' || text_[pos_] == 'S') {
        if (!lenient_)
          throw ParseError(ErrorKind::UnsupportedConstruct, start, {}, "signed literals are not supported");
        ++pos_;
      }
      char base = static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_++])));
      unsigned radix = base == 'b' ? 2 : base == 'o' ? 8 : base == 'h' ? 16 : 10;
      while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
        ++pos_;
      uint64_t value = 0;
      bool any = false;
      while (pos_ < text_.size()) {
        char d = static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_])));
        if (d == '_') {
          ++pos_;
          continue;
        }
        unsigned digit;
        if (d >= '0' && d <= '9')
          digit = static_cast<unsigned>(d - '0');
        else if (d >= 'a' && d <= 'f')
          digit = static_cast<unsigned>(d - 'a' + 10);
        else if (d == 'x' || d == 'z' || d == '?') {
          ++pos_;
          if (!lenient_)
            throw ParseError(ErrorKind::UnsupportedConstruct, start, {},
                             "x/z literal digits are not supported");
          continue;
        } else
          break;
        if (digit >= radix)
          break;
        if (value > (UINT64_MAX - digit) / radix)
          return malformed(tok, start, "literal value overflows 64 bits");
        value = value * radix + digit;
        any = true;
        ++pos_;
      }
      if (!any)
        return malformed(tok, start, "based literal has no digits");
      if (!have_size)
        size = 32;
      if (size == 0 || size > 64)
        return malformed(tok, start, "literal width must be between 1 and 64");
      if (size < 64 && (value >> size) != 0)
        return malformed(tok, start, "literal value does not fit in its width");
      tok.width = static_cast<uint32_t>(size);
      tok.value = value;
      tok.base = base;
      tok.sized = have_size;
      tok.text = std::string(text_.substr(start, pos_ - start));
      return tok;
    }
    if (size > UINT32_MAX)
      return malformed(tok, start, "bare decimal literal exceeds 32 bits");
    tok.width = 32;
    tok.value = size;
    tok.base = 'd';
    tok.sized = false;
    tok.text = std::string(text_.substr(start, pos_ - start));
    return tok;
  }

  std::string_view text_;
  bool lenient_;
  std::size_t pos_ = 0;
};

} // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text, false).run(); }

std::vector<std::string> tokenize_lenient(std::string_view text) {
  std::vector<std::string> out;
  for (auto &tok : Lexer(text, true).run())
    if (tok.kind != TokenKind::End)
      out.push_back(std::move(tok.text));
  return out;
}

} // namespace svaforge::sva
