// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/sva/parser.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace svaforge::sva {

struct Candidate {
  std::string text;
  std::size_t offset = 0; // into the scanned response
  std::optional<Assertion> parsed;
  std::optional<ParseError> error;
};

/// Pulls assertion candidates out of free-form model output. When the text has
/// fenced code blocks only their contents are scanned; otherwise the whole text
/// is scanned for `assert property` items. A fenced block with no such item is
/// itself a single candidate. Never throws.
std::vector<Candidate> extract_assertions(std::string_view text, const ParseOptions &opts = {});

/// First candidate that parsed, if any.
std::optional<Assertion> first_parsed(const std::vector<Candidate> &candidates);

} // namespace svaforge::sva
