// Copyright 2026 The Authors.
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

#include "fairrank/errors.hpp"

namespace fairrank {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAllZeroCounts: return "AllZeroCounts";
    case ErrorCode::kDistributionNotNormalized: return "DistributionNotNormalized";
    case ErrorCode::kInvalidValue: return "InvalidValue";
    case ErrorCode::kPoolNotSorted: return "PoolNotSorted";
    case ErrorCode::kInsufficientCandidates: return "InsufficientCandidates";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kDuplicateAttribute: return "DuplicateAttribute";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kMissingPool: return "MissingPool";
    case ErrorCode::kKOutOfRange: return "KOutOfRange";
    case ErrorCode::kZeroDesiredProportion: return "ZeroDesiredProportion";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyCandidateSets: return "EmptyCandidateSets";
    case ErrorCode::kUnknownAlgorithm: return "UnknownAlgorithm";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kIoError: return "IOError";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

}  // namespace fairrank
