// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/trace/trace_json.hpp"

#include "svaforge/common/error.hpp"

namespace svaforge::trace {

nlohmann::json trace_to_json(const Trace &t) {
  nlohmann::json sigs = nlohmann::json::array();
  for (const auto &s : t.signals())
    sigs.push_back({{"name", s.name}, {"width", s.width}});
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t k = 0; k < t.length(); ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t i = 0; i < t.signals().size(); ++i)
      row.push_back(t.value(k, i));
    steps.push_back(std::move(row));
  }
  return {{"signals", std::move(sigs)}, {"steps", std::move(steps)}};
}

Trace trace_from_json(const nlohmann::json &j) {
  try {
    std::vector<Signal> sigs;
    for (const auto &s : j.at("signals"))
      sigs.push_back({s.at("name").get<std::string>(), s.at("width").get<uint32_t>()});
    Trace t(std::move(sigs));
    for (const auto &row : j.at("steps"))
      t.add_step(row.get<std::vector<uint64_t>>());
    return t;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed trace: ") + e.what());
  }
}

} // namespace svaforge::trace
