// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

namespace svaforge::llm {

inline constexpr const char *kPropertyAnalysis = "property_analysis";
inline constexpr const char *kNl2Sva = "nl2sva";
inline constexpr const char *kSva2Nl = "sva2nl";
inline constexpr const char *kJudge = "judge";
inline constexpr const char *kReasoning = "reasoning";

using Bindings = std::map<std::string, std::string>;

struct PromptTemplate {
  std::string id;
  std::string text;

  /// Placeholders the stage fills in; all must appear in `text`.
  static const std::vector<std::string> &required(const std::string &id);
  /// Replaces {name} for every known placeholder in one pass; substituted
  /// values are not rescanned. Throws InvalidArgument on a missing binding.
  std::string render(const Bindings &b) const;
};

/// The five templates. Defaults are built in; `load_dir` overrides any of
/// them from `<dir>/<id>.txt`.
class TemplateSet {
public:
  TemplateSet();

  static const std::vector<std::string> &ids();
  static std::string default_text(const std::string &id);

  void load_dir(const std::string &dir);
  void set(const std::string &id, std::string text);
  const PromptTemplate &get(const std::string &id) const;

private:
  std::map<std::string, PromptTemplate> templates_;
};

} // namespace svaforge::llm
