// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/llm/backend.hpp"

#include "svaforge/common/error.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <thread>

namespace svaforge::llm {

HttpBackend::HttpBackend(BackendProfile profile) : profile_(std::move(profile)) {
  const std::string &url = profile_.endpoint;
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos)
    throw Error(ErrorKind::Config, "backend " + profile_.name + ": endpoint needs a scheme: " + url);
  std::size_t slash = url.find('/', scheme + 3);
  base_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/v1/chat/completions" : url.substr(slash);
  if (!profile_.api_key_env.empty()) {
    const char *tok = std::getenv(profile_.api_key_env.c_str());
    if (!tok)
      throw Error(ErrorKind::Config,
                  "backend " + profile_.name + ": environment variable " + profile_.api_key_env + " is not set");
    token_ = tok;
  }
}

Response HttpBackend::complete(const Request &req) {
  nlohmann::json body = {
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", req.prompt}}})},
      {"temperature", req.sampling.effective_temperature()},
      {"top_p", req.sampling.top_p},
      {"max_tokens", req.sampling.max_tokens},
      {"n", 1},
  };
  if (!profile_.model.empty())
    body["model"] = profile_.model;
  const std::string payload = body.dump();

  httplib::Client cli(base_);
  cli.set_connection_timeout(profile_.timeout_s, 0);
  cli.set_read_timeout(profile_.timeout_s, 0);
  if (!token_.empty())
    cli.set_bearer_token_auth(token_);

  std::string last_error;
  uint32_t delay = profile_.retry.backoff_ms;
  for (uint32_t attempt = 1; attempt <= profile_.retry.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
      delay *= 2;
    }
    auto res = cli.Post(path_, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw Error(ErrorKind::Backend, "backend " + profile_.name + ": HTTP " + std::to_string(res->status) +
                                          ": " + res->body.substr(0, 200));
    try {
      auto j = nlohmann::json::parse(res->body);
      return {j.at("choices").at(0).at("message").at("content").get<std::string>(), attempt};
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::Backend, "backend " + profile_.name + ": malformed completion: " + e.what());
    }
  }
  throw Error(ErrorKind::Backend, "backend " + profile_.name + ": giving up after " +
                                      std::to_string(profile_.retry.max_attempts) + " attempts (" + last_error + ")");
}

} // namespace svaforge::llm
