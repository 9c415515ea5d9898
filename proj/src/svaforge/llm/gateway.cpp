// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/llm/gateway.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/sva/extract.hpp"
#include "svaforge/sva/printer.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

namespace svaforge::llm {

const char *provenance_name(Provenance p) {
  return p == Provenance::Decomposed ? "decomposed" : "back_translated";
}

Provenance provenance_from_name(const std::string &s) {
  if (s == "decomposed")
    return Provenance::Decomposed;
  if (s == "back_translated")
    return Provenance::BackTranslated;
  throw Error(ErrorKind::InvalidArgument, "unknown provenance " + s);
}

namespace {

constexpr std::size_t kAuditTruncate = 200;

std::string trim(const std::string &s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string category_key(std::string s) {
  s = trim(s);
  for (char &c : s) {
    if (c == ' ' || c == '-')
      c = '_';
    else
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

} // namespace

std::vector<std::string> parse_properties(const std::string &response) {
  static const std::regex line_re(R"(^\s*\**Property\s+\d+\s*\**\s*:\s*(.*\S)\s*$)");
  std::vector<std::string> out;
  std::istringstream in(response);
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, line_re))
      out.push_back(m[1].str());
  }
  return out;
}

JudgeResult parse_verdict(const std::string &response) {
  JudgeResult r;
  r.raw = response;
  std::string last;
  std::istringstream in(response);
  std::string line;
  while (std::getline(in, line))
    if (!trim(line).empty())
      last = trim(line);

  static const std::regex accept_re(R"(^VERDICT:\s*ACCEPT$)");
  static const std::regex reject_re(R"(^VERDICT:\s*REJECT\s*\((.*)\)$)");
  std::smatch m;
  if (std::regex_match(last, accept_re)) {
    r.verdict = JudgeVerdict::Accept;
    return r;
  }
  if (!std::regex_match(last, m, reject_re))
    return r;
  std::string list = m[1].str();
  std::vector<std::string> flagged;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string item = category_key(list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (!item.empty()) {
      if (std::find(kJudgeCategories.begin(), kJudgeCategories.end(), item) == kJudgeCategories.end())
        return r; // unknown category: the verdict line is not well formed
      if (std::find(flagged.begin(), flagged.end(), item) == flagged.end())
        flagged.push_back(item);
    }
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  // Taxonomy order, independent of the order the model listed them in.
  for (const auto &c : kJudgeCategories)
    if (std::find(flagged.begin(), flagged.end(), c) != flagged.end())
      r.flagged.push_back(c);
  r.verdict = JudgeVerdict::Reject;
  return r;
}

ReasonResult split_reasoning(const std::string &response) {
  ReasonResult r;
  r.raw = response;
  std::string remainder;
  std::vector<std::string> blocks;
  std::size_t pos = 0;
  for (;;) {
    std::size_t open = response.find("<think>", pos);
    if (open == std::string::npos) {
      remainder += response.substr(pos);
      break;
    }
    remainder += response.substr(pos, open - pos);
    std::size_t body = open + 7;
    std::size_t close = response.find("</think>", body);
    if (close == std::string::npos) {
      // Unterminated: everything after the tag is reasoning.
      blocks.push_back(trim(response.substr(body)));
      break;
    }
    blocks.push_back(trim(response.substr(body, close - body)));
    pos = close + 8;
  }
  r.missing_think = blocks.empty();
  for (std::size_t i = 0; i < blocks.size(); ++i)
    r.reasoning += (i ? "\n" : "") + blocks[i];
  for (auto &c : sva::extract_assertions(remainder)) {
    if (c.parsed) {
      r.sva = std::move(c.parsed);
      r.sva_text = std::move(c.text);
      break;
    }
  }
  return r;
}

std::string normalize_whitespace(const std::string &s) {
  std::string out;
  bool gap = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = !out.empty();
      continue;
    }
    if (gap)
      out += ' ';
    gap = false;
    out += c;
  }
  return out;
}

std::string error_taxonomy_text() {
  return "- logical_misalignment: the temporal or logical structure of the assertion differs from the property.\n"
         "- signal_inconsistency: the assertion uses the wrong signals, widths, or values.\n"
         "- rtl_misunderstanding: the assertion relies on behavior the design does not have.\n"
         "- wrong_sva_object: the assertion checks a different behavior than the one described.";
}

Gateway::Gateway(std::shared_ptr<Backend> backend, BackendProfile profile,
                 std::shared_ptr<const TemplateSet> templates, std::shared_ptr<AuditLog> audit)
    : backend_(std::move(backend)), profile_(std::move(profile)), templates_(std::move(templates)),
      audit_(std::move(audit)),
      slots_(std::make_unique<std::counting_semaphore<1024>>(
          static_cast<std::ptrdiff_t>(std::clamp<uint32_t>(profile_.max_in_flight, 1, 1024)))) {
  if (!backend_ || !templates_)
    throw Error(ErrorKind::InvalidArgument, "gateway needs a backend and templates");
  if (!audit_)
    audit_ = std::make_shared<AuditLog>();
}

std::string Gateway::complete_one(const std::string &template_id, const Bindings &bindings, uint32_t index,
                                  const Sampling &sampling) {
  Request req;
  req.template_id = template_id;
  req.prompt = templates_->get(template_id).render(bindings);
  req.prompt_hash = prompt_hash(req.prompt);
  req.sampling = sampling;
  req.sample_index = index;
  nlohmann::json entry = {{"backend", profile_.name},
                          {"template_id", template_id},
                          {"prompt_hash", req.prompt_hash},
                          {"sample_index", index}};
  Response res;
  slots_->acquire();
  try {
    res = backend_->complete(req);
  } catch (const Error &e) {
    slots_->release();
    entry["error"] = e.what();
    audit_->append(entry);
    throw;
  }
  slots_->release();
  entry["attempts"] = res.attempts;
  entry["response"] = res.text.substr(0, kAuditTruncate);
  audit_->append(entry);
  return std::move(res.text);
}

std::vector<std::string> Gateway::complete(const std::string &template_id, const Bindings &bindings, uint32_t n,
                                           const Sampling &sampling) {
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "n_samples must be at least 1");
  std::vector<std::string> out;
  out.reserve(n);
  for (uint32_t i = 0; i < n; ++i)
    out.push_back(complete_one(template_id, bindings, i, sampling));
  return out;
}

Bindings Gateway::design_bindings(const rtl::DesignUnit &d,
                                  const std::optional<std::vector<std::string>> &signal_hints) {
  std::vector<std::string> names;
  if (signal_hints) {
    names = *signal_hints;
  } else {
    for (const auto &s : d.signals())
      names.push_back(s.name);
  }
  std::string signals;
  for (std::size_t i = 0; i < names.size(); ++i)
    signals += (i ? ", " : "") + names[i];
  std::string code = d.source;
  while (!code.empty() && (code.back() == '\n' || code.back() == '\r'))
    code.pop_back();
  return {{"code", code}, {"signals", signals}, {"spec", d.spec.value_or("")}};
}

std::vector<NlProperty> Gateway::analyze_properties(const rtl::DesignUnit &d) {
  if (!d.spec)
    throw Error(ErrorKind::InvalidArgument, "design " + d.name + " has no specification text");
  auto resp = complete(kPropertyAnalysis, design_bindings(d, std::nullopt), 1,
                       Sampling::sampled(profile_.sampling, kSampleTemperature));
  std::vector<NlProperty> out;
  for (auto &t : parse_properties(resp[0]))
    out.push_back({std::move(t), Provenance::Decomposed});
  if (out.empty())
    throw Error(ErrorKind::NoPropertiesParsed, "no 'Property <n>:' lines in the analysis of " + d.name);
  return out;
}

namespace {

SvaResult to_sva(std::string raw) {
  SvaResult r;
  for (auto &c : sva::extract_assertions(raw)) {
    if (c.parsed) {
      r.parsed = std::move(c.parsed);
      r.text = std::move(c.text);
      break;
    }
  }
  r.raw = std::move(raw);
  return r;
}

} // namespace

SvaResult Gateway::nl2sva(const rtl::DesignUnit &d, const NlProperty &x,
                          const std::optional<std::vector<std::string>> &signal_hints) {
  Bindings b = design_bindings(d, signal_hints);
  b["nl"] = x.text;
  return to_sva(complete(kNl2Sva, b, 1, Sampling::greedy(profile_.sampling))[0]);
}

std::vector<SvaResult> Gateway::sample_sva(const rtl::DesignUnit &d, const NlProperty &x,
                                           const std::optional<std::vector<std::string>> &signal_hints, uint32_t n,
                                           const Sampling &sampling) {
  Bindings b = design_bindings(d, signal_hints);
  b["nl"] = x.text;
  std::vector<SvaResult> out;
  for (uint32_t i = 0; i < n; ++i) {
    try {
      out.push_back(to_sva(complete_one(kNl2Sva, b, i, sampling)));
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::Backend && e.kind() != ErrorKind::MockKeyMissing)
        throw;
      SvaResult r;
      r.error = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

NlProperty Gateway::sva2nl(const rtl::DesignUnit &d, const sva::Assertion &y) {
  Bindings b = design_bindings(d, std::nullopt);
  b["sva"] = sva::print_assertion(y);
  auto resp = complete(kSva2Nl, b, 1, Sampling::sampled(profile_.sampling, kSampleTemperature));
  std::string text = normalize_whitespace(resp[0]);
  if (text.empty())
    throw Error(ErrorKind::EmptyTranslation, "empty back-translation for " + y.label);
  return {text, Provenance::BackTranslated};
}

JudgeResult Gateway::judge(const rtl::DesignUnit &d, const NlProperty &x, const sva::Assertion &y) {
  Bindings b = design_bindings(d, std::nullopt);
  b["nl"] = x.text;
  b["sva"] = sva::print_assertion(y);
  b["error_taxonomy"] = error_taxonomy_text();
  return parse_verdict(complete(kJudge, b, 1, Sampling::greedy(profile_.sampling))[0]);
}

ReasonResult Gateway::reason(const rtl::DesignUnit &d, const NlProperty &x,
                             const std::optional<std::vector<std::string>> &signal_hints) {
  Bindings b = design_bindings(d, signal_hints);
  b["nl"] = x.text;
  return split_reasoning(complete(kReasoning, b, 1)[0]);
}

} // namespace svaforge::llm
