// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/llm/script_backend.hpp"

#include "svaforge/common/error.hpp"

#include <algorithm>
#include <tuple>

namespace svaforge::llm {

std::vector<ScriptRule> ScriptBackend::rules_from_json(const nlohmann::json &j) {
  if (!j.is_array())
    throw Error(ErrorKind::Config, "script must be an array of rules");
  std::vector<ScriptRule> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto &r = j[i];
    try {
      ScriptRule rule;
      rule.template_id = r.at("template").get<std::string>();
      if (r.contains("match")) {
        if (r["match"].is_string())
          rule.match = {r["match"].get<std::string>()};
        else
          rule.match = r["match"].get<std::vector<std::string>>();
      }
      if (r.contains("responses")) {
        rule.responses = r["responses"].get<std::vector<std::string>>();
        rule.cycle = r.value("cycle", false);
      } else {
        rule.responses = {r.at("response").get<std::string>()};
        rule.cycle = true;
      }
      if (rule.responses.empty())
        throw Error(ErrorKind::Config, "script rule " + std::to_string(i) + " has no responses");
      out.push_back(std::move(rule));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::Config, "script rule " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

Response ScriptBackend::complete(const Request &req) {
  for (const auto &rule : rules_) {
    if (rule.template_id != req.template_id)
      continue;
    bool all = std::all_of(rule.match.begin(), rule.match.end(),
                           [&](const std::string &m) { return req.prompt.find(m) != std::string::npos; });
    if (!all)
      continue;
    if (rule.cycle)
      return {rule.responses[req.sample_index % rule.responses.size()], 1};
    if (req.sample_index >= rule.responses.size())
      break;
    return {rule.responses[req.sample_index], 1};
  }
  throw Error(ErrorKind::MockKeyMissing, "no script response for template " + req.template_id + ", prompt hash " +
                                             req.prompt_hash + ", sample " + std::to_string(req.sample_index));
}

Response RecordingBackend::complete(const Request &req) {
  Response r = inner_->complete(req);
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back({req.template_id, req.prompt_hash, req.sample_index, r.text});
  return r;
}

std::size_t RecordingBackend::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

std::string RecordingBackend::fixture_jsonl() const {
  std::vector<Entry> sorted;
  {
    std::lock_guard<std::mutex> lock(mu_);
    sorted = entries_;
  }
  auto key = [](const Entry &e) { return std::tie(e.template_id, e.prompt_hash, e.sample_index); };
  std::sort(sorted.begin(), sorted.end(), [&](const Entry &a, const Entry &b) { return key(a) < key(b); });
  sorted.erase(std::unique(sorted.begin(), sorted.end(), [&](const Entry &a, const Entry &b) { return key(a) == key(b); }),
               sorted.end());
  std::string out;
  for (const auto &e : sorted)
    out += nlohmann::json{{"template_id", e.template_id},
                          {"prompt_hash", e.prompt_hash},
                          {"sample_index", e.sample_index},
                          {"response", e.response}}
               .dump() +
           "\n";
  return out;
}

} // namespace svaforge::llm
