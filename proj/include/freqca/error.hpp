/* Copyright 2026 The FreqCa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>

namespace freqca {

// Error categories shared by every module. The numeric values are mirrored
// by freqca_status in the C API header.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kShapeMismatch = 2,
  kRankDeficient = 3,
  kZeroVector = 4,
  kDegenerateCovariance = 5,
  kInvalidCutoff = 6,
  kOrderTooHigh = 7,
  kInsufficientHistory = 8,
  kBackwardPrediction = 9,
  kNonMonotoneStep = 10,
  kEmptyCache = 11,
  kInvalidInterval = 12,
  kInvalidConfig = 13,
  kConfigError = 14,
  kFormatError = 15,
  kIoError = 16,
  kNumerical = 17,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace freqca
