// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/sva/extract.hpp"

#include <cctype>

namespace svaforge::sva {

namespace {

struct Region {
  std::size_t begin;
  std::size_t end;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<Region> fenced_regions(std::string_view text) {
  std::vector<Region> out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t open = text.find("```", pos);
    if (open == std::string_view::npos)
      break;
    std::size_t body = open + 3;
    // Optional info string such as "systemverilog", only when it sits alone on
    // the opening line.
    std::size_t eol = text.find('\n', body);
    if (eol != std::string_view::npos) {
      bool tag = true;
      for (std::size_t i = body; i < eol; ++i) {
        char c = text[i];
        if (!(ident_char(c) || c == '-' || c == '+' || c == '\r' || c == ' '))
          tag = false;
      }
      if (tag)
        body = eol + 1;
    }
    std::size_t close = text.find("```", body);
    if (close == std::string_view::npos) {
      out.push_back({body, text.size()});
      break;
    }
    out.push_back({body, close});
    pos = close + 3;
  }
  return out;
}

// Offset of the next `assert property` keyword pair in [from, end).
std::size_t find_assert(std::string_view text, std::size_t from, std::size_t end) {
  while (from < end) {
    std::size_t at = text.find("assert", from);
    if (at == std::string_view::npos || at >= end)
      return std::string_view::npos;
    from = at + 6;
    if (at > 0 && ident_char(text[at - 1]))
      continue;
    std::size_t p = at + 6;
    if (p >= end || !space(text[p]))
      continue;
    while (p < end && space(text[p]))
      ++p;
    if (text.substr(p, 8) == "property" && (p + 8 >= end || !ident_char(text[p + 8])))
      return at;
  }
  return std::string_view::npos;
}

std::size_t label_start(std::string_view text, std::size_t assert_at, std::size_t floor) {
  std::size_t p = assert_at;
  while (p > floor && space(text[p - 1]))
    --p;
  if (p == floor || text[p - 1] != ':' || (p - 1 > floor && text[p - 2] == ':'))
    return assert_at;
  --p;
  while (p > floor && space(text[p - 1]))
    --p;
  std::size_t ident_end = p;
  while (p > floor && ident_char(text[p - 1]))
    --p;
  if (p == ident_end || std::isdigit(static_cast<unsigned char>(text[p])))
    return assert_at;
  return p;
}

// End of the item that starts with `assert property` at `at`: just past the
// matching `)` and an optional `;`. Unbalanced input runs to `limit`.
std::size_t item_end(std::string_view text, std::size_t at, std::size_t limit) {
  std::size_t open = text.find('(', at);
  if (open == std::string_view::npos || open >= limit)
    return limit;
  int depth = 0;
  for (std::size_t i = open; i < limit; ++i) {
    if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      if (--depth == 0) {
        std::size_t j = i + 1;
        while (j < limit && (text[j] == ' ' || text[j] == '\t'))
          ++j;
        if (j < limit && text[j] == ';')
          return j + 1;
        return i + 1;
      }
    }
  }
  return limit;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && space(s[b]))
    ++b;
  while (e > b && space(s[e - 1]))
    --e;
  return std::string(s.substr(b, e - b));
}

void add_candidate(std::vector<Candidate> &out, std::string_view text, std::size_t b, std::size_t e,
                   const ParseOptions &opts) {
  Candidate c;
  c.offset = b;
  c.text = trim(text.substr(b, e - b));
  if (c.text.empty())
    return;
  auto result = try_parse_assertion(c.text, opts);
  if (auto *a = std::get_if<Assertion>(&result))
    c.parsed = std::move(*a);
  else
    c.error = std::get<ParseError>(std::move(result));
  out.push_back(std::move(c));
}

void scan_region(std::vector<Candidate> &out, std::string_view text, Region r, bool whole_if_none,
                 const ParseOptions &opts) {
  std::size_t from = r.begin;
  std::size_t floor = r.begin;
  bool found = false;
  while (from < r.end) {
    std::size_t at = find_assert(text, from, r.end);
    if (at == std::string_view::npos)
      break;
    found = true;
    std::size_t next = find_assert(text, at + 6, r.end);
    std::size_t limit = next == std::string_view::npos ? r.end : label_start(text, next, at);
    std::size_t end = item_end(text, at, limit);
    add_candidate(out, text, label_start(text, at, floor), end, opts);
    floor = end;
    from = end;
  }
  if (!found && whole_if_none)
    add_candidate(out, text, r.begin, r.end, opts);
}

} // namespace

std::vector<Candidate> extract_assertions(std::string_view text, const ParseOptions &opts) {
  std::vector<Candidate> out;
  std::vector<Region> fenced = fenced_regions(text);
  if (fenced.empty()) {
    scan_region(out, text, {0, text.size()}, false, opts);
    return out;
  }
  for (const Region &r : fenced)
    scan_region(out, text, r, true, opts);
  return out;
}

std::optional<Assertion> first_parsed(const std::vector<Candidate> &candidates) {
  for (const auto &c : candidates)
    if (c.parsed)
      return c.parsed;
  return std::nullopt;
}

} // namespace svaforge::sva
