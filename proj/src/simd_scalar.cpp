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

#include <algorithm>
#include <atomic>
#include <cmath>

#include "tukeydp/simd.hpp"

namespace tdp::simd {

namespace scalar {

static inline double Project(const double* cols, size_t n, int d,
                             const double* u, size_t i) {
  double acc = cols[i] * u[0];
  for (int j = 1; j < d; ++j) {
    double t = cols[j * n + i] * u[j];
    acc = acc + t;
  }
  return acc;
}

void ProjectBatch(const double* cols, size_t n, int d, const double* u,
                  double* out) {
  for (size_t i = 0; i < n; ++i) out[i] = Project(cols, n, d, u, i);
}

SideCount CountSides(const double* cols, size_t n, int d, const double* u,
                     double c, double tol) {
  SideCount sc;
  const double lo = c - tol, hi = c + tol;
  for (size_t i = 0; i < n; ++i) {
    double v = Project(cols, n, d, u, i);
    sc.below += v < lo;
    sc.above += v > hi;
  }
  return sc;
}

std::pair<double, double> ProjectRange(const double* cols, size_t n, int d,
                                       const double* u) {
  double mn = Project(cols, n, d, u, 0), mx = mn;
  for (size_t i = 1; i < n; ++i) {
    double v = Project(cols, n, d, u, i);
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return {mn, mx};
}

}  // namespace scalar

namespace {

std::atomic<int> g_level{-1};

bool Supported(Level level) {
  switch (level) {
    case Level::kScalar: return true;
    case Level::kAvx2:
#ifdef TUKEYDP_SIMD_X86
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Level::kNeon:
#ifdef TUKEYDP_SIMD_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

}  // namespace

Level DetectLevel() {
  if (Supported(Level::kAvx2)) return Level::kAvx2;
  if (Supported(Level::kNeon)) return Level::kNeon;
  return Level::kScalar;
}

Level ActiveLevel() {
  int l = g_level.load(std::memory_order_relaxed);
  if (l < 0) {
    l = static_cast<int>(DetectLevel());
    g_level.store(l, std::memory_order_relaxed);
  }
  return static_cast<Level>(l);
}

bool SetLevel(Level level) {
  if (!Supported(level)) return false;
  g_level.store(static_cast<int>(level), std::memory_order_relaxed);
  return true;
}

const char* LevelName(Level level) {
  switch (level) {
    case Level::kScalar: return "scalar";
    case Level::kAvx2: return "avx2";
    case Level::kNeon: return "neon";
  }
  return "unknown";
}

void ProjectBatch(const double* cols, size_t n, int d, const double* u,
                  double* out) {
  switch (ActiveLevel()) {
#ifdef TUKEYDP_SIMD_X86
    case Level::kAvx2: return avx2::ProjectBatch(cols, n, d, u, out);
#endif
#ifdef TUKEYDP_SIMD_NEON
    case Level::kNeon: return neon::ProjectBatch(cols, n, d, u, out);
#endif
    default: return scalar::ProjectBatch(cols, n, d, u, out);
  }
}

SideCount CountSides(const double* cols, size_t n, int d, const double* u,
                     double c, double tol) {
  switch (ActiveLevel()) {
#ifdef TUKEYDP_SIMD_X86
    case Level::kAvx2: return avx2::CountSides(cols, n, d, u, c, tol);
#endif
#ifdef TUKEYDP_SIMD_NEON
    case Level::kNeon: return neon::CountSides(cols, n, d, u, c, tol);
#endif
    default: return scalar::CountSides(cols, n, d, u, c, tol);
  }
}

std::pair<double, double> ProjectRange(const double* cols, size_t n, int d,
                                       const double* u) {
  switch (ActiveLevel()) {
#ifdef TUKEYDP_SIMD_X86
    case Level::kAvx2: return avx2::ProjectRange(cols, n, d, u);
#endif
#ifdef TUKEYDP_SIMD_NEON
    case Level::kNeon: return neon::ProjectRange(cols, n, d, u);
#endif
    default: return scalar::ProjectRange(cols, n, d, u);
  }
}

}  // namespace tdp::simd
