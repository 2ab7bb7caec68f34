// Copyright 2026 The qgraph Authors
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

#ifndef QGRAPH_ERROR_HPP
#define QGRAPH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgraph {

enum class ErrorCode {
  ShapeMismatch,
  IndexOutOfRange,
  NonPositiveWeight,
  NotState,
  NotDeltaForm,
  NotQuantumAdjacency,
  NotCompletelyPositive,
  NotIdempotent,
  NotModularSelfAdjoint,
  NotGenerating,
  MismatchedBase,
  HasQuantumSource,
  BudgetExceeded,
  BadNormalization,
  NotUnitary,
  InvalidPermutation,
  StateNotInvariant,
  NotZeroOne,
  NotClassical,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::NotState: return "NotState";
    case ErrorCode::NotDeltaForm: return "NotDeltaForm";
    case ErrorCode::NotQuantumAdjacency: return "NotQuantumAdjacency";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotModularSelfAdjoint: return "NotModularSelfAdjoint";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::MismatchedBase: return "MismatchedBase";
    case ErrorCode::HasQuantumSource: return "HasQuantumSource";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BadNormalization: return "BadNormalization";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::StateNotInvariant: return "StateNotInvariant";
    case ErrorCode::NotZeroOne: return "NotZeroOne";
    case ErrorCode::NotClassical: return "NotClassical";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qgraph

#endif  // QGRAPH_ERROR_HPP
