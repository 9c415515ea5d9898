// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/common/error.hpp"

namespace svaforge {

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Parse: return "ParseError";
  case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
  case ErrorKind::UnknownSignal: return "UnknownSignal";
  case ErrorKind::BoundExceeded: return "BoundExceeded";
  case ErrorKind::MultipleModules: return "MultipleModules";
  case ErrorKind::MultipleDrivers: return "MultipleDrivers";
  case ErrorKind::CombinationalCycle: return "CombinationalCycle";
  case ErrorKind::WidthMismatch: return "WidthMismatch";
  case ErrorKind::Design: return "DesignError";
  case ErrorKind::Io: return "IoError";
  case ErrorKind::Config: return "ConfigError";
  case ErrorKind::Checkpoint: return "CorruptedCheckpoint";
  case ErrorKind::Backend: return "BackendError";
  case ErrorKind::MockKeyMissing: return "MockKeyMissing";
  case ErrorKind::NoPropertiesParsed: return "NoPropertiesParsed";
  case ErrorKind::EmptyTranslation: return "EmptyTranslation";
  case ErrorKind::ToolUnavailable: return "ToolUnavailable";
  case ErrorKind::UnparseableToolOutput: return "UnparseableToolOutput";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

} // namespace svaforge
