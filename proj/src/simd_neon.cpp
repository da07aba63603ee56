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

#include "tukeydp/simd.hpp"

#ifdef TUKEYDP_SIMD_NEON

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace tdp::simd::neon {

namespace {

inline float64x2_t Project2(const double* cols, size_t n, int d,
                            const double* u, size_t i) {
  float64x2_t acc = vmulq_n_f64(vld1q_f64(cols + i), u[0]);
  for (int j = 1; j < d; ++j)
    acc = vaddq_f64(acc, vmulq_n_f64(vld1q_f64(cols + j * n + i), u[j]));
  return acc;
}

inline double ProjectOne(const double* cols, size_t n, int d, const double* u,
                         size_t i) {
  double acc = cols[i] * u[0];
  for (int j = 1; j < d; ++j) {
    double t = cols[j * n + i] * u[j];
    acc = acc + t;
  }
  return acc;
}

}  // namespace

void ProjectBatch(const double* cols, size_t n, int d, const double* u,
                  double* out) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, Project2(cols, n, d, u, i));
  for (; i < n; ++i) out[i] = ProjectOne(cols, n, d, u, i);
}

SideCount CountSides(const double* cols, size_t n, int d, const double* u,
                     double c, double tol) {
  const float64x2_t lo = vdupq_n_f64(c - tol), hi = vdupq_n_f64(c + tol);
  uint64x2_t below = vdupq_n_u64(0), above = vdupq_n_u64(0);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = Project2(cols, n, d, u, i);
    below = vsubq_u64(below, vcltq_f64(v, lo));
    above = vsubq_u64(above, vcgtq_f64(v, hi));
  }
  SideCount sc;
  sc.below = vgetq_lane_u64(below, 0) + vgetq_lane_u64(below, 1);
  sc.above = vgetq_lane_u64(above, 0) + vgetq_lane_u64(above, 1);
  for (; i < n; ++i) {
    double v = ProjectOne(cols, n, d, u, i);
    sc.below += v < c - tol;
    sc.above += v > c + tol;
  }
  return sc;
}

std::pair<double, double> ProjectRange(const double* cols, size_t n, int d,
                                       const double* u) {
  double mn = INFINITY, mx = -INFINITY;
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = Project2(cols, n, d, u, i);
    mn = std::min(mn, std::min(vgetq_lane_f64(v, 0), vgetq_lane_f64(v, 1)));
    mx = std::max(mx, std::max(vgetq_lane_f64(v, 0), vgetq_lane_f64(v, 1)));
  }
  for (; i < n; ++i) {
    double v = ProjectOne(cols, n, d, u, i);
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return {mn, mx};
}

}  // namespace tdp::simd::neon

#endif  // TUKEYDP_SIMD_NEON
