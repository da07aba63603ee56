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

#ifdef TUKEYDP_SIMD_X86

#pragma GCC target("avx2")
#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace tdp::simd::avx2 {

namespace {

// Lanes hold four consecutive points; mul then add keeps the scalar order.
inline __m256d Project4(const double* cols, size_t n, int d, const double* u,
                        size_t i) {
  __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(cols + i), _mm256_set1_pd(u[0]));
  for (int j = 1; j < d; ++j) {
    __m256d t = _mm256_mul_pd(_mm256_loadu_pd(cols + j * n + i),
                              _mm256_set1_pd(u[j]));
    acc = _mm256_add_pd(acc, t);
  }
  return acc;
}

}  // namespace

void ProjectBatch(const double* cols, size_t n, int d, const double* u,
                  double* out) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, Project4(cols, n, d, u, i));
  if (i < n) {
    double tail[4];
    for (size_t k = i; k < n; ++k) {
      double acc = cols[k] * u[0];
      for (int j = 1; j < d; ++j) {
        double t = cols[j * n + k] * u[j];
        acc = acc + t;
      }
      tail[k - i] = acc;
    }
    std::copy(tail, tail + (n - i), out + i);
  }
}

SideCount CountSides(const double* cols, size_t n, int d, const double* u,
                     double c, double tol) {
  const __m256d lo = _mm256_set1_pd(c - tol), hi = _mm256_set1_pd(c + tol);
  __m256i below = _mm256_setzero_si256(), above = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = Project4(cols, n, d, u, i);
    // Comparison masks are all-ones (-1) per lane; subtracting counts them.
    below = _mm256_sub_epi64(
        below, _mm256_castpd_si256(_mm256_cmp_pd(v, lo, _CMP_LT_OQ)));
    above = _mm256_sub_epi64(
        above, _mm256_castpd_si256(_mm256_cmp_pd(v, hi, _CMP_GT_OQ)));
  }
  alignas(32) long long b[4], a[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(b), below);
  _mm256_store_si256(reinterpret_cast<__m256i*>(a), above);
  SideCount sc;
  sc.below = static_cast<size_t>(b[0] + b[1] + b[2] + b[3]);
  sc.above = static_cast<size_t>(a[0] + a[1] + a[2] + a[3]);
  for (; i < n; ++i) {
    double acc = cols[i] * u[0];
    for (int j = 1; j < d; ++j) {
      double t = cols[j * n + i] * u[j];
      acc = acc + t;
    }
    sc.below += acc < c - tol;
    sc.above += acc > c + tol;
  }
  return sc;
}

std::pair<double, double> ProjectRange(const double* cols, size_t n, int d,
                                       const double* u) {
  size_t i = 0;
  double mn, mx;
  if (n >= 4) {
    __m256d vmin = Project4(cols, n, d, u, 0), vmax = vmin;
    for (i = 4; i + 4 <= n; i += 4) {
      __m256d v = Project4(cols, n, d, u, i);
      vmin = _mm256_min_pd(vmin, v);
      vmax = _mm256_max_pd(vmax, v);
    }
    alignas(32) double lo[4], hi[4];
    _mm256_store_pd(lo, vmin);
    _mm256_store_pd(hi, vmax);
    mn = std::min(std::min(lo[0], lo[1]), std::min(lo[2], lo[3]));
    mx = std::max(std::max(hi[0], hi[1]), std::max(hi[2], hi[3]));
  } else {
    mn = INFINITY;
    mx = -INFINITY;
  }
  for (; i < n; ++i) {
    double acc = cols[i] * u[0];
    for (int j = 1; j < d; ++j) {
      double t = cols[j * n + i] * u[j];
      acc = acc + t;
    }
    mn = std::min(mn, acc);
    mx = std::max(mx, acc);
  }
  return {mn, mx};
}

}  // namespace tdp::simd::avx2

#endif  // TUKEYDP_SIMD_X86
