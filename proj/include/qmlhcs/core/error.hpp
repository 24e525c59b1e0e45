// Copyright 2026 The qmlhcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmlhcs {

/// Every failure raised by the library carries one of these kinds so callers
/// can branch on the category without parsing messages.
enum class ErrorKind {
  DimensionMismatch,
  LengthMismatch,
  NonFinite,
  InvalidConfig,
  DuplicateName,
  UnknownName,
  InconsistentKeyLength,
  MissingRiskFunctional,
  CycleDetected,
  MissingSourceInput,
  PerturbationOutputDimMismatch,
  NegativeTarget,
  DegenerateLabels,
  IndexOutOfRange,
  ZeroTarget,
  DegenerateBaseline,
  UnknownOptimizer,
  MissingHyperparam,
  NonFiniteObjective,
  EmptyLabel,
  MalformedLine,
  EmptyLogs,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::InconsistentKeyLength: return "InconsistentKeyLength";
    case ErrorKind::MissingRiskFunctional: return "MissingRiskFunctional";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::MissingSourceInput: return "MissingSourceInput";
    case ErrorKind::PerturbationOutputDimMismatch: return "PerturbationOutputDimMismatch";
    case ErrorKind::NegativeTarget: return "NegativeTarget";
    case ErrorKind::DegenerateLabels: return "DegenerateLabels";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ZeroTarget: return "ZeroTarget";
    case ErrorKind::DegenerateBaseline: return "DegenerateBaseline";
    case ErrorKind::UnknownOptimizer: return "UnknownOptimizer";
    case ErrorKind::MissingHyperparam: return "MissingHyperparam";
    case ErrorKind::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorKind::EmptyLabel: return "EmptyLabel";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::EmptyLogs: return "EmptyLogs";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

inline void require_same_size(std::size_t expected, std::size_t actual, std::string_view what,
                              ErrorKind kind = ErrorKind::DimensionMismatch) {
  if (expected != actual) {
    throw Error(kind, std::string(what) + ": expected " + std::to_string(expected) + ", got " +
                          std::to_string(actual));
  }
}

}  // namespace detail
}  // namespace qmlhcs
