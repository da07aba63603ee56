//
// Copyright 2026 The tukeydp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "tukeydp/common.hpp"

namespace tdp {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kUnbounded: return "Unbounded";
    case ErrorCode::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kCellBudgetOverflow: return "CellBudgetOverflow";
    case ErrorCode::kCoverTooLarge: return "CoverTooLarge";
    case ErrorCode::kBoxSearchFailed: return "BoxSearchFailed";
    case ErrorCode::kMTooSmall: return "MTooSmall";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kOffGridPoint: return "OffGridPoint";
    case ErrorCode::kIOError: return "IOError";
    case ErrorCode::kAbortTooSmall: return "AbortTooSmall";
    case ErrorCode::kStageFailure: return "StageFailure";
  }
  return "Unknown";
}

double Factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace tdp
