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

#include "freqca/error.hpp"

namespace freqca {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDegenerateCovariance: return "DegenerateCovariance";
    case ErrorCode::kInvalidCutoff: return "InvalidCutoff";
    case ErrorCode::kOrderTooHigh: return "OrderTooHigh";
    case ErrorCode::kInsufficientHistory: return "InsufficientHistory";
    case ErrorCode::kBackwardPrediction: return "BackwardPrediction";
    case ErrorCode::kNonMonotoneStep: return "NonMonotoneStep";
    case ErrorCode::kEmptyCache: return "EmptyCache";
    case ErrorCode::kInvalidInterval: return "InvalidInterval";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNumerical: return "NumericalError";
  }
  return "Unknown";
}

}  // namespace freqca
