// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/llm/backend.hpp"
#include "svaforge/llm/templates.hpp"
#include "svaforge/rtl/design.hpp"
#include "svaforge/sva/ast.hpp"

#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

namespace svaforge::llm {

enum class Provenance { Decomposed, BackTranslated };

const char *provenance_name(Provenance p);
Provenance provenance_from_name(const std::string &s);

struct NlProperty {
  std::string text;
  Provenance provenance = Provenance::Decomposed;
};

/// Judge error taxonomy, in prompt order.
inline const std::vector<std::string> kJudgeCategories = {
    "logical_misalignment", "signal_inconsistency", "rtl_misunderstanding", "wrong_sva_object"};

enum class JudgeVerdict { Accept, Reject, Unknown };

struct JudgeResult {
  JudgeVerdict verdict = JudgeVerdict::Unknown;
  std::vector<std::string> flagged; // subset of kJudgeCategories
  std::string raw;
};

struct SvaResult {
  std::string raw;
  std::optional<sva::Assertion> parsed;
  std::string text; // source text of the parsed candidate
  std::string error; // backend failure for this sample, if any
};

struct ReasonResult {
  std::string reasoning;
  bool missing_think = false;
  std::optional<sva::Assertion> sva;
  std::string sva_text;
  std::string raw;
};

// Response post-processing, exposed for tests.
std::vector<std::string> parse_properties(const std::string &response);
JudgeResult parse_verdict(const std::string &response);
ReasonResult split_reasoning(const std::string &response);
std::string normalize_whitespace(const std::string &s);
std::string error_taxonomy_text();

/// One backend with its profile, the prompt templates, and the audit log.
/// Safe to call concurrently; at most profile.max_in_flight calls reach the
/// backend at once.
class Gateway {
public:
  Gateway(std::shared_ptr<Backend> backend, BackendProfile profile, std::shared_ptr<const TemplateSet> templates,
          std::shared_ptr<AuditLog> audit);

  const BackendProfile &profile() const { return profile_; }
  const TemplateSet &templates() const { return *templates_; }

  /// Renders the template and asks for `n` samples (indices 0..n-1).
  std::vector<std::string> complete(const std::string &template_id, const Bindings &bindings, uint32_t n,
                                    const Sampling &sampling);
  std::vector<std::string> complete(const std::string &template_id, const Bindings &bindings, uint32_t n) {
    return complete(template_id, bindings, n, profile_.sampling);
  }
  /// Sample `index` of the rendered template.
  std::string complete_one(const std::string &template_id, const Bindings &bindings, uint32_t index,
                           const Sampling &sampling);

  /// Throws NoPropertiesParsed when no `Property <n>: <text>` line is found.
  std::vector<NlProperty> analyze_properties(const rtl::DesignUnit &d);
  /// Greedy; parsed is empty when no candidate parses.
  SvaResult nl2sva(const rtl::DesignUnit &d, const NlProperty &x,
                   const std::optional<std::vector<std::string>> &signal_hints = std::nullopt);
  /// `n` sampled translations (difficulty sampling, evaluation). A backend
  /// failure on one sample is reported in its `error` and does not stop the rest.
  std::vector<SvaResult> sample_sva(const rtl::DesignUnit &d, const NlProperty &x,
                                    const std::optional<std::vector<std::string>> &signal_hints, uint32_t n,
                                    const Sampling &sampling);
  /// Throws EmptyTranslation on a blank response.
  NlProperty sva2nl(const rtl::DesignUnit &d, const sva::Assertion &y);
  JudgeResult judge(const rtl::DesignUnit &d, const NlProperty &x, const sva::Assertion &y);
  ReasonResult reason(const rtl::DesignUnit &d, const NlProperty &x,
                      const std::optional<std::vector<std::string>> &signal_hints = std::nullopt);

  static Bindings design_bindings(const rtl::DesignUnit &d,
                                  const std::optional<std::vector<std::string>> &signal_hints);

private:
  std::shared_ptr<Backend> backend_;
  BackendProfile profile_;
  std::shared_ptr<const TemplateSet> templates_;
  std::shared_ptr<AuditLog> audit_;
  std::unique_ptr<std::counting_semaphore<1024>> slots_;
};

/// Temperature for analysis, back-translation, and difficulty sampling.
inline constexpr double kSampleTemperature = 0.8;

} // namespace svaforge::llm
