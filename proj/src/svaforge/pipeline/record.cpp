// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/pipeline/record.hpp"

#include "svaforge/common/error.hpp"

namespace svaforge::pipeline {

void PipelineRecord::pass(const std::string &stage, nlohmann::json detail) {
  history.push_back({stage, "pass", std::move(detail)});
}

void PipelineRecord::drop(const std::string &stage, const std::string &reason, nlohmann::json detail) {
  if (!alive())
    throw Error(ErrorKind::InvalidArgument, "record " + id + " is already dropped");
  history.push_back({stage, reason, std::move(detail)});
  drop_stage = stage;
  drop_reason = reason;
}

nlohmann::json PipelineRecord::to_json() const {
  nlohmann::json h = nlohmann::json::array();
  for (const auto &e : history)
    h.push_back({{"stage", e.stage}, {"verdict", e.verdict}, {"detail", e.detail}});
  nlohmann::json j = {
      {"id", id},
      {"design_ref", design_ref},
      {"nl", {{"text", nl.text}, {"provenance", llm::provenance_name(nl.provenance)}}},
      {"sva_text", sva_text},
      {"original_sva", original_sva},
      {"reasoning", reasoning ? nlohmann::json(*reasoning) : nlohmann::json(nullptr)},
      {"final_sva", final_sva},
      {"stage_history", h},
      {"status", alive() ? nlohmann::json("alive")
                         : nlohmann::json({{"dropped", {{"stage", drop_stage}, {"reason", drop_reason}}}})},
  };
  return j;
}

PipelineRecord PipelineRecord::from_json(const nlohmann::json &j) {
  PipelineRecord r;
  r.id = j.at("id").get<std::string>();
  r.design_ref = j.at("design_ref").get<std::string>();
  r.nl.text = j.at("nl").at("text").get<std::string>();
  r.nl.provenance = llm::provenance_from_name(j.at("nl").at("provenance").get<std::string>());
  r.sva_text = j.at("sva_text").get<std::string>();
  r.original_sva = j.at("original_sva").get<std::string>();
  if (!j.at("reasoning").is_null())
    r.reasoning = j.at("reasoning").get<std::string>();
  r.final_sva = j.at("final_sva").get<std::string>();
  for (const auto &e : j.at("stage_history"))
    r.history.push_back({e.at("stage").get<std::string>(), e.at("verdict").get<std::string>(), e.at("detail")});
  const auto &st = j.at("status");
  if (!st.is_string()) {
    r.drop_stage = st.at("dropped").at("stage").get<std::string>();
    r.drop_reason = st.at("dropped").at("reason").get<std::string>();
  }
  return r;
}

} // namespace svaforge::pipeline
