// Copyright 2026 The tokenprune Authors.
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

namespace tokenprune {

enum class ErrorCode {
  kShapeMismatch,
  kNonFiniteEntry,
  kNormExceedsUnit,
  kDimensionMismatch,
  kEmptyDocument,
  kZeroVector,
  kNumericalBreakdown,
  kIterationLimit,
  kDimensionNot2,
  kConvergenceFailure,
  kTooFewTokens,
  kGradientAbsent,
  kTooFewDocuments,
  kIndexMismatch,
  kInvalidConfig,
  kParseError,
  kInvariantViolation,
  kBadMagic,
  kTruncatedFile,
  kVersionUnsupported,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. The code is stable and meant for
/// programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code-name prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace tokenprune
