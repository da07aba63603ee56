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

#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace tdp::simd {
namespace {

std::vector<double> RandomCols(size_t n, int d, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> c(n * d);
  for (auto& x : c) x = u(g);
  return c;
}

TEST(Simd, DispatchReportsSupportedLevel) {
  Level l = DetectLevel();
  EXPECT_TRUE(SetLevel(l));
  EXPECT_EQ(ActiveLevel(), l);
  EXPECT_TRUE(SetLevel(Level::kScalar));
  EXPECT_EQ(ActiveLevel(), Level::kScalar);
  SetLevel(l);
}

#ifdef TUKEYDP_SIMD_X86
TEST(Simd, Avx2MatchesScalarBitForBit) {
  if (!__builtin_cpu_supports("avx2")) GTEST_SKIP() << "no AVX2 on this host";
  std::mt19937_64 g(17);
  for (int d = 1; d <= 4; ++d) {
    for (size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 31u, 100u, 1003u}) {
      auto cols = RandomCols(n, d, g);
      auto u = RandomCols(1, d, g);
      std::vector<double> a(n), b(n);
      scalar::ProjectBatch(cols.data(), n, d, u.data(), a.data());
      avx2::ProjectBatch(cols.data(), n, d, u.data(), b.data());
      for (size_t i = 0; i < n; ++i) ASSERT_EQ(a[i], b[i]) << "d=" << d << " n=" << n;
      double c = a[n / 2];
      auto sa = scalar::CountSides(cols.data(), n, d, u.data(), c, 1e-9);
      auto sb = avx2::CountSides(cols.data(), n, d, u.data(), c, 1e-9);
      EXPECT_EQ(sa.below, sb.below);
      EXPECT_EQ(sa.above, sb.above);
      auto ra = scalar::ProjectRange(cols.data(), n, d, u.data());
      auto rb = avx2::ProjectRange(cols.data(), n, d, u.data());
      EXPECT_EQ(ra.first, rb.first);
      EXPECT_EQ(ra.second, rb.second);
    }
  }
}
#endif

TEST(Simd, CountSidesHonoursTolerance) {
  // Points at x = 0, 0.5, 1 against the line x = 0.5: the middle one sits
  // on the boundary and belongs to neither open side.
  std::vector<double> cols = {0.0, 0.5, 1.0, 0.0, 0.0, 0.0};
  double u[2] = {1.0, 0.0};
  for (Level l : {Level::kScalar, DetectLevel()}) {
    SetLevel(l);
    SideCount sc = CountSides(cols.data(), 3, 2, u, 0.5, 1e-9);
    EXPECT_EQ(sc.below, 1u);
    EXPECT_EQ(sc.above, 1u);
  }
  SetLevel(DetectLevel());
}

}  // namespace
}  // namespace tdp::simd
