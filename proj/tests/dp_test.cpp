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

#include "tukeydp/dp.hpp"

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "tukeydp/tdc.hpp"
#include "test_util.hpp"

namespace tdp {
namespace {

TEST(Noise, DisabledDrawsAreZero) {
  NoiseSource n = NoiseSource::Disabled();
  EXPECT_EQ(n.Laplace(3.0), 0.0);
  EXPECT_EQ(n.DiscreteLaplace(8.0), 0);
  EXPECT_TRUE(n.Split("x").disabled());
}

TEST(Noise, SameSeedSameDraws) {
  NoiseSource a = NoiseSource::Seeded(42), b = NoiseSource::Seeded(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.Laplace(1.0), b.Laplace(1.0));
  NoiseSource ca = a.Split("svt"), cb = b.Split("svt");
  EXPECT_EQ(ca.DiscreteLaplace(4.0), cb.DiscreteLaplace(4.0));
  NoiseSource other = a.Split("svt");  // second split differs from the first
  NoiseSource again = NoiseSource::Seeded(42).Split("svt");
  double x = other.Laplace(1.0);
  EXPECT_NE(x, again.Laplace(1.0));
}

TEST(Noise, LaplaceMoments) {
  NoiseSource n = NoiseSource::Seeded(7);
  const int N = 1000000;
  double s = 0, s2 = 0;
  for (int i = 0; i < N; ++i) {
    double x = n.Laplace(1.0);
    s += x;
    s2 += x * x;
  }
  double mean = s / N, var = s2 / N - mean * mean;
  EXPECT_LE(std::abs(mean), 0.01);
  EXPECT_GE(var, 1.9);
  EXPECT_LE(var, 2.1);
}

TEST(Noise, DiscreteLaplacePmf) {
  const double eps = 1.0, b = 8.0 / eps;
  NoiseSource n = NoiseSource::Seeded(11);
  const int N = 1000000;
  std::map<int64_t, int> hist;
  for (int i = 0; i < N; ++i) ++hist[n.DiscreteLaplace(b)];
  double r = std::exp(-1.0 / b);
  double p0 = (1 - r) / (1 + r);
  EXPECT_NEAR(p0, 0.0625, 0.0005);
  EXPECT_NEAR(static_cast<double>(hist[0]) / N, p0, 0.005);
  // Total variation against the closed form over the observed support plus
  // the unobserved tail mass.
  double tv = 0, seen = 0;
  for (auto [i, c] : hist) {
    double p = p0 * std::pow(r, std::abs(static_cast<double>(i)));
    tv += std::abs(static_cast<double>(c) / N - p);
    seen += p;
  }
  tv = 0.5 * (tv + (1.0 - seen));
  EXPECT_LE(tv, 0.01);
  // Ratio of neighbouring masses near zero.
  double ratio = static_cast<double>(hist[2]) / hist[1];
  EXPECT_NEAR(ratio, r, 0.02);
}

TEST(Svt, DisabledFirstCrossing) {
  NoiseSource n = NoiseSource::Disabled();
  std::vector<double> q = {3, 7, 9};
  int calls = 0;
  auto r = SvtRun(3, [&](int i) { ++calls; return q[i]; }, 7.0, 1.0, 5.0, n);
  ASSERT_TRUE(r.halt.has_value());
  EXPECT_EQ(*r.halt, 1);
  EXPECT_EQ(calls, 2);  // nothing past the halt index
}

TEST(Svt, DisabledNoCrossing) {
  NoiseSource n = NoiseSource::Disabled();
  auto r = SvtRun(3, [](int i) { return static_cast<double>(i); }, 7.0, 1.0, 0.0, n);
  EXPECT_FALSE(r.halt.has_value());
  EXPECT_EQ(r.values.size(), 3u);
}

TEST(Svt, SeededIsDeterministicAndLazy) {
  for (uint64_t s = 0; s < 20; ++s) {
    NoiseSource a = NoiseSource::Seeded(s), b = NoiseSource::Seeded(s);
    int ca = 0, cb = 0;
    auto ra = SvtRun(50, [&](int i) { ++ca; return 0.2 * i; }, 5.0, 1.0, 0.0, a);
    auto rb = SvtRun(50, [&](int i) { ++cb; return 0.2 * i; }, 5.0, 1.0, 0.0, b);
    EXPECT_EQ(ra.halt, rb.halt);
    if (ra.halt) {
      EXPECT_EQ(ca, *ra.halt + 1);
    }
  }
}

TEST(ExpMechanism, DisabledArgmaxLowestIndex) {
  NoiseSource n = NoiseSource::Disabled();
  EXPECT_EQ(ExpMechanismSample({1, 5, 5}, n), 1u);
  EXPECT_EQ(ExpMechanismSampleLog({0, 2, 2}, n), 1u);
}

TEST(ExpMechanism, Frequencies) {
  NoiseSource n = NoiseSource::Seeded(3);
  const int N = 100000;
  int c0 = 0;
  for (int i = 0; i < N; ++i) c0 += ExpMechanismSample({1, 1}, n) == 0;
  EXPECT_GE(c0, 0.49 * N);
  EXPECT_LE(c0, 0.51 * N);
  int e0 = 0;
  for (int i = 0; i < N; ++i) e0 += ExpMechanismSample({std::exp(1.0), 1}, n) == 0;
  double ratio = static_cast<double>(e0) / (N - e0);
  EXPECT_NEAR(ratio, std::exp(1.0), 0.05 * std::exp(1.0));
}

TEST(Budget, BasicAndAdvanced) {
  PrivacyBudget b;
  b.Charge("a", 0.5);
  b.Charge("b", 0.5);
  EXPECT_DOUBLE_EQ(b.epsilon_spent(), 1.0);
  EXPECT_THROW(b.Charge("neg", -0.1), Error);
  auto [e, d] = AdvancedComposition(1, 0.3, 1e-6);
  EXPECT_DOUBLE_EQ(e, 0.3 * std::sqrt(std::log(1e6)));
  EXPECT_DOUBLE_EQ(d, 2e-6);
  auto [e4, d4] = AdvancedComposition(4, 0.1, 1e-3);
  EXPECT_DOUBLE_EQ(e4, 0.1 * std::sqrt(4 * std::log(1.0 / 4e-3)));
  EXPECT_DOUBLE_EQ(d4, 8e-3);
  b.ChargeAdvanced("k", 10, 0.01, 1e-7, 0.2, 1e-6);
  EXPECT_DOUBLE_EQ(b.epsilon_spent(), 1.2);
  EXPECT_EQ(b.invocations(), 12);
}

IntervalOracle GridOracle(const std::function<double(double)>& f, double h) {
  return [f, h](double p, double q) {
    IntervalMax best{-INFINITY, p};
    for (long k = static_cast<long>(std::ceil(p / h - 1e-9)); k * h <= q + 1e-12; ++k) {
      double v = f(k * h);
      if (v > best.value) best = {v, k * h};
    }
    return best;
  };
}

TEST(Qc, DisabledFindsPeak) {
  NoiseSource n = NoiseSource::Disabled();
  QcDomain dom = QcDomain::UnitGrid(8);
  auto r = DpBinarySearchQc(GridOracle([](double x) { return -std::abs(x - 0.25); }, dom.step),
                            dom, 1.0, n);
  EXPECT_DOUBLE_EQ(r.x, 0.25);
  auto c = DpBinarySearchQc(GridOracle([](double) { return 3.0; }, dom.step), dom, 1.0, n);
  EXPECT_EQ(c.value, 3.0);
  EXPECT_GE(c.x, 0.0);
  EXPECT_LE(c.x, 1.0);
}

TEST(Qc, RotatedDomainCoversBall) {
  for (int d : {2, 3}) {
    QcDomain dom = QcDomain::RotatedGrid(8, d);
    EXPECT_LE(dom.lo, -std::sqrt(d));
    EXPECT_GE(dom.hi(), std::sqrt(d) - 1e-12);
    EXPECT_LE(dom.step, 1.0 / 256 + 1e-15);
  }
}

IntervalOracle TdcOracle(const NestedIntervals& ni) {
  return [&ni](double p, double q) {
    EvalResult r = TdcEvalInterval(ni, p, q);
    return IntervalMax{static_cast<double>(r.value), r.witness};
  };
}

TEST(Qc, SquareTdcSeeded) {
  PointSet sq = testing::Square();
  RegionChain ch = BuildRegionChain(sq, 4);
  NestedIntervals ni = TdcPrecompute(ch, {});
  const double eps = 5, beta = 0.05;
  QcDomain dom = QcDomain::UnitGrid(8);
  double alpha = QcAlpha(dom.levels, eps, beta);
  int ok = 0;
  for (uint64_t s = 0; s < 200; ++s) {
    NoiseSource n = NoiseSource::Seeded(s);
    auto r = DpBinarySearchQc(TdcOracle(ni), dom, eps, n);
    ok += TdcEval(ni, r.x) >= ni.levels() - alpha;
  }
  EXPECT_GE(ok, 180);
}

// Coverage of the calibrated constant on staircase objectives taken from
// random point sets: the loss stays within QcAlpha in at least 1 - beta of
// the runs at every tested depth of recursion and epsilon.
TEST(Qc, CalibratedConstantCoverage) {
  const double beta = 0.05;
  for (int L : {6, 8, 10}) {
    for (double eps : {1.0, 10.0}) {
      int ok = 0, total = 0;
      for (int inst = 0; inst < 8; ++inst) {
        PointSet ps = testing::RandomPointSet(60, 2, 500 + inst, L);
        RegionChain ch = BuildRegionChain(ps, 1000);
        NestedIntervals ni = TdcPrecompute(ch, {});
        QcDomain dom = QcDomain::UnitGrid(L);
        double alpha = QcAlpha(L, eps, beta);
        for (uint64_t s = 0; s < 60; ++s) {
          NoiseSource n = NoiseSource::Seeded(s * 31 + inst);
          auto r = DpBinarySearchQc(TdcOracle(ni), dom, eps, n);
          ok += TdcEval(ni, r.x) >= ni.levels() - alpha;
          ++total;
        }
      }
      EXPECT_GE(ok, (1 - beta) * total) << "L=" << L << " eps=" << eps;
    }
  }
}

TEST(Qc, WorstCaseBoundDominatesCalibrated) {
  for (int L : {4, 8, 16})
    EXPECT_GE(QcAlphaWorstCase(L, 1.0, 0.05), QcAlpha(L, 1.0, 0.05));
}

}  // namespace
}  // namespace tdp
