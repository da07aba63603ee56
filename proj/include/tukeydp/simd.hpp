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

// Batch kernels over coordinate-major point blocks: column j of a block
// with n points starts at cols + j * n. Each kernel has a scalar reference
// and vector variants with identical results (no FMA contraction, same
// per-point summation order), picked once at runtime.

#ifndef TUKEYDP_SIMD_HPP_
#define TUKEYDP_SIMD_HPP_

#include <cstddef>
#include <utility>

#if defined(__x86_64__) || defined(_M_X64)
#define TUKEYDP_SIMD_X86 1
#endif
#if defined(__aarch64__) && defined(__ARM_NEON)
#define TUKEYDP_SIMD_NEON 1
#endif

namespace tdp::simd {

enum class Level { kScalar, kAvx2, kNeon };

struct SideCount {
  size_t below = 0;  // <u,p> < c - tol
  size_t above = 0;  // <u,p> > c + tol
};

// Best level supported by the running CPU.
Level DetectLevel();
// Level currently used by the dispatching entry points.
Level ActiveLevel();
// Overrides dispatch (tests and benchmarks). Unsupported levels are ignored
// and false is returned.
bool SetLevel(Level level);
const char* LevelName(Level level);

// out[i] = <p_i, u>
void ProjectBatch(const double* cols, size_t n, int d, const double* u,
                  double* out);
SideCount CountSides(const double* cols, size_t n, int d, const double* u,
                     double c, double tol);
// (min, max) of <p_i, u>; requires n >= 1.
std::pair<double, double> ProjectRange(const double* cols, size_t n, int d,
                                       const double* u);

namespace scalar {
void ProjectBatch(const double* cols, size_t n, int d, const double* u,
                  double* out);
SideCount CountSides(const double* cols, size_t n, int d, const double* u,
                     double c, double tol);
std::pair<double, double> ProjectRange(const double* cols, size_t n, int d,
                                       const double* u);
}  // namespace scalar

#ifdef TUKEYDP_SIMD_X86
namespace avx2 {
void ProjectBatch(const double* cols, size_t n, int d, const double* u,
                  double* out);
SideCount CountSides(const double* cols, size_t n, int d, const double* u,
                     double c, double tol);
std::pair<double, double> ProjectRange(const double* cols, size_t n, int d,
                                       const double* u);
}  // namespace avx2
#endif

#ifdef TUKEYDP_SIMD_NEON
namespace neon {
void ProjectBatch(const double* cols, size_t n, int d, const double* u,
                  double* out);
SideCount CountSides(const double* cols, size_t n, int d, const double* u,
                     double c, double tol);
std::pair<double, double> ProjectRange(const double* cols, size_t n, int d,
                                       const double* u);
}  // namespace neon
#endif

}  // namespace tdp::simd

#endif  // TUKEYDP_SIMD_HPP_
