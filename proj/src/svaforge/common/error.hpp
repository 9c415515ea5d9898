// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace svaforge {

enum class ErrorKind {
  Parse,
  UnsupportedConstruct,
  UnknownSignal,
  BoundExceeded,
  MultipleModules,
  MultipleDrivers,
  CombinationalCycle,
  WidthMismatch,
  Design,
  Io,
  Config,
  Checkpoint,
  Backend,
  MockKeyMissing,
  NoPropertiesParsed,
  EmptyTranslation,
  ToolUnavailable,
  UnparseableToolOutput,
  InvalidArgument,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Syntax error with the byte offset where parsing stopped and the set of
/// tokens that would have been accepted there.
class ParseError : public Error {
public:
  ParseError(ErrorKind kind, std::size_t offset, std::vector<std::string> expected,
             const std::string &message)
      : Error(kind, message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset), expected_(std::move(expected)), short_message_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string> &expected() const noexcept { return expected_; }
  const std::string &short_message() const noexcept { return short_message_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string short_message_;
};

} // namespace svaforge
