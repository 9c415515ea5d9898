// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/trace/trace.hpp"

#include <json.hpp>

namespace svaforge::trace {

/// {"signals": [{"name": ..., "width": ...}], "steps": [[v, ...], ...]}
nlohmann::json trace_to_json(const Trace &t);

/// Inverse of trace_to_json. Throws Error(InvalidArgument) on malformed input.
Trace trace_from_json(const nlohmann::json &j);

} // namespace svaforge::trace
