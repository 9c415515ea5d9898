// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace svaforge {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// SHA-256 of a file's bytes; throws Io when it cannot be read.
std::string sha256_file(const std::string &path);

} // namespace svaforge
