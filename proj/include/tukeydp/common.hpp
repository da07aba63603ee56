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

#ifndef TUKEYDP_COMMON_HPP_
#define TUKEYDP_COMMON_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdp {

using Vec = std::vector<double>;

// Feasibility / equality tolerance used by every geometric routine.
inline constexpr double kTol = 1e-9;
// Coplanarity tolerance when merging hull facets.
inline constexpr double kCoplanarTol = 1e-8;

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateInput,
  kInfeasible,
  kUnbounded,
  kUnsupportedDimension,
  kEmptyRegion,
  kCellBudgetOverflow,
  kCoverTooLarge,
  kBoxSearchFailed,
  kMTooSmall,
  kParseError,
  kOffGridPoint,
  kIOError,
  kAbortTooSmall,
  kStageFailure,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline double Dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double Norm(const Vec& a) { return std::sqrt(Dot(a, a)); }

inline Vec Sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec Add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec Scale(const Vec& a, double s) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

inline Vec Normalized(const Vec& a) {
  double n = Norm(a);
  return n > 0 ? Scale(a, 1.0 / n) : a;
}

inline Vec Cross3(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double Distance(const Vec& a, const Vec& b) { return Norm(Sub(a, b)); }

double Factorial(int n);

}  // namespace tdp

#endif  // TUKEYDP_COMMON_HPP_
