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

#include "tukeydp/kappa_select.hpp"

#include <cmath>
#include <map>
#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace tdp {
namespace {

using testing::RandomGridPoints;
using testing::RandomPointSet;

// Direct evaluation of the max-over-i definition, no early exit.
int QBrute(const std::vector<double>& v, int k, int m) {
  auto at = [&](int j) { return j >= 1 && j <= static_cast<int>(v.size()) ? v[j - 1] : 0.0; };
  int best = 0;
  for (int i = 0; i <= std::min(k - 1, m - k); ++i) {
    double num = at(k + i), den = at(k - i);
    bool ok = den == 0.0 ? num == 0.0 : num / den >= 0.5;
    if (ok) best = i;
  }
  return best;
}

TEST(QQuery, EndsAreZero) {
  std::vector<double> v = {1.0, 0.9, 0.8, 0.7, 0.6};
  EXPECT_EQ(QQuery(v, 1, 5), 0);
  EXPECT_EQ(QQuery(v, 5, 5), 0);
}

TEST(QQuery, ConstantVolumes) {
  std::vector<double> v(9, 0.25);
  for (int k = 1; k <= 9; ++k) EXPECT_EQ(QQuery(v, k, 9), std::min(k - 1, 9 - k));
}

TEST(QQuery, HalvingVolumes) {
  std::vector<double> v;
  for (int k = 1; k <= 12; ++k) v.push_back(std::ldexp(1.0, -k));
  for (int k = 1; k <= 12; ++k) EXPECT_EQ(QQuery(v, k, 12), 0);
}

TEST(QQuery, EmptyTailsCountAsSatisfied) {
  std::vector<double> v = {1.0, 0.8};  // D(3..) empty
  EXPECT_EQ(QQuery(v, 5, 9), 2);       // 0/0 up to i = 2, then 0/0.8
  EXPECT_EQ(QQuery(v, 2, 9), 0);
}

TEST(QQuery, AgreesWithBruteForce) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0.3, 1.0);
  for (int t = 0; t < 200; ++t) {
    int m = 2 + static_cast<int>(g() % 30);
    std::vector<double> v;
    double x = 1.0;
    int len = static_cast<int>(g() % (m + 1));
    for (int k = 0; k < len; ++k) v.push_back(x *= u(g));
    for (int k = 1; k <= m; ++k) ASSERT_EQ(QQuery(v, k, m), QBrute(v, k, m));
  }
}

TEST(KappaQueryTable, InvariantsOnPointSets) {
  for (uint64_t s = 0; s < 10; ++s) {
    PointSet p = RandomPointSet(30, 2, 40 + s);
    KappaQueryTable t = KappaQueryTable::FromPoints(p, 20);
    EXPECT_EQ(t.At(1), 0);
    EXPECT_EQ(t.At(20), 0);
    for (int k = 1; k < 20; ++k) EXPECT_LE(std::abs(t.At(k) - t.At(k + 1)), 1);
    for (int k = 1; k <= 20; ++k) EXPECT_GE(t.At(k), 0);
  }
}

TEST(KappaQueryTable, RejectsIncreasingVolumes) {
  EXPECT_THROW(KappaQueryTable::FromVolumes({0.5, 0.6}, 3), Error);
}

TEST(ShiftedExp, MTooSmall) {
  KappaQueryTable t = KappaQueryTable::FromVolumes(std::vector<double>(10, 1.0), 10);
  NoiseSource n = NoiseSource::Seeded(1);
  try {
    ShiftedExpMechanism(t, 1.0, n);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMTooSmall);
  }
}

TEST(ShiftedExp, DisabledReturnsFirstArgmax) {
  NoiseSource n = NoiseSource::Disabled();
  KappaQueryTable tri = KappaQueryTable::FromVolumes(std::vector<double>(21, 1.0), 21);
  KappaSelection s = ShiftedExpMechanism(tri, 1.0, n);
  EXPECT_EQ(s.output, 11);
  EXPECT_EQ(s.shift, 0);
  EXPECT_EQ(s.q_max, 10);
  // All volumes halving: q is identically zero.
  std::vector<double> v;
  for (int k = 1; k <= 20; ++k) v.push_back(std::ldexp(1.0, -k));
  KappaSelection z = ShiftedExpMechanism(KappaQueryTable::FromVolumes(v, 20), 1.0, n);
  EXPECT_EQ(z.output, 1);
  EXPECT_DOUBLE_EQ(z.budget.epsilon_spent(), 1.0);
}

TEST(ShiftedExp, PmfSumsToOneOverWindow) {
  std::vector<int> q = {0, 1, 2, 3, 2, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  const double eps = 0.9;
  const int64_t w = ShiftedExpWindow(eps);
  std::vector<double> pmf = ShiftedExpPmf(q, eps, 1 - w, 20 + w);
  double s = 0.0;
  for (double p : pmf) s += p;
  EXPECT_NEAR(s, 1.0, 1e-11);
}

// 6-point instance, m = 20, eps = 0.9: empirical pmf of the sampler against
// the closed form.
TEST(ShiftedExp, EmpiricalMatchesClosedForm) {
  PointSet p = PointSet::Make({{0.125, 0.25}, {0.875, 0.125}, {0.5, 0.875}, {0.25, 0.625},
                               {0.75, 0.5}, {0.5, 0.375}},
                              3);
  KappaQueryTable t = KappaQueryTable::FromPoints(p, 20);
  const double eps = 0.9;
  const int64_t w = ShiftedExpWindow(eps, 1e-9);
  const int64_t lo = 1 - w, hi = 20 + w;
  std::vector<double> pmf = ShiftedExpPmf(t.q, eps, lo, hi);
  NoiseSource n = NoiseSource::Seeded(2026);
  std::map<int64_t, int> hist;
  const int runs = 1000000;
  for (int r = 0; r < runs; ++r) ++hist[ShiftedExpMechanism(t, eps, n).output];
  double tv = 0.0, inside = 0.0;
  for (int64_t j = lo; j <= hi; ++j) {
    double emp = hist.count(j) ? hist[j] / static_cast<double>(runs) : 0.0;
    tv += std::abs(emp - pmf[j - lo]);
    inside += emp;
  }
  tv += 1.0 - inside;
  EXPECT_LE(tv / 2.0, 0.01);
}

// Small hand-built neighbours: P and P plus one point.
std::vector<std::pair<PointSet, PointSet>> NeighbourPairs() {
  const std::vector<std::vector<Vec>> bases = {
      {{0, 0}, {1, 0}, {0, 1}},
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}},
      {{0.25, 0.25}, {0.75, 0.25}, {0.5, 0.75}, {0.5, 0.5}},
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}},
      {{0.125, 0.5}, {0.875, 0.5}, {0.5, 0.125}, {0.5, 0.875}, {0.5, 0.5}, {0.25, 0.25}},
  };
  const std::vector<Vec> extras = {{0.5, 0.5}, {0.125, 0.875}};
  std::vector<std::pair<PointSet, PointSet>> out;
  for (const auto& b : bases)
    for (const Vec& x : extras) {
      PointSet p = PointSet::Make(b, 3);
      out.push_back({p, p.With(x)});
    }
  return out;
}

TEST(ShiftedExp, AnalyticPrivacyRatio) {
  auto pairs = NeighbourPairs();
  ASSERT_GE(pairs.size(), 10u);
  for (double eps : {0.5, 0.9}) {
    const int m = static_cast<int>(std::ceil(16.0 / eps));
    const int64_t w = ShiftedExpWindow(eps);
    for (const auto& [p, q] : pairs) {
      ASSERT_LE(p.size(), 8u);
      std::vector<double> a = ShiftedExpPmf(KappaQueryTable::FromPoints(p, m).q, eps, 1 - w, m + w);
      std::vector<double> b = ShiftedExpPmf(KappaQueryTable::FromPoints(q, m).q, eps, 1 - w, m + w);
      double worst = 0.0;
      for (size_t j = 0; j < a.size(); ++j)
        worst = std::max({worst, std::log(a[j] / b[j]), std::log(b[j] / a[j])});
      EXPECT_LE(worst, eps + 1e-9) << p.size() << " eps " << eps;
    }
  }
}

double UtilityBound(int m, double eps, double beta) { return 17.0 / eps * std::log(2.0 * m / beta); }

// Fraction of seeded runs landing on an index within the utility bound.
double UtilityRate(const KappaQueryTable& t, double eps, int runs, uint64_t seed) {
  const double bar = t.Max() - UtilityBound(t.m, eps, 0.05);
  int good = 0;
  for (int r = 0; r < runs; ++r) {
    NoiseSource n = NoiseSource::Seeded(seed + r);
    KappaSelection s = ShiftedExpMechanism(t, eps, n);
    if (!s.out_of_range && t.At(static_cast<int>(s.output)) >= bar) ++good;
  }
  return good / static_cast<double>(runs);
}

TEST(ShiftedExp, UtilityOnPlateau) {
  // q peaks at 99; the bound asks for q >= 99 - 38.2.
  KappaQueryTable t = KappaQueryTable::FromVolumes(std::vector<double>(200, 0.5), 200);
  ASSERT_GT(t.Max() - UtilityBound(200, 4.0, 0.05), 50);
  EXPECT_GE(UtilityRate(t, 4.0, 200, 100), 0.9);
}

TEST(ShiftedExp, UtilityOnPointSet) {
  PointSet p = RandomPointSet(120, 2, 77);
  KappaQueryTable t = KappaQueryTable::FromPoints(p, 40);
  EXPECT_GE(UtilityRate(t, 10.0, 200, 500), 0.9);
}

TEST(QAudit, RandomNeighbours) {
  std::mt19937_64 g(11);
  for (uint64_t s = 0; s < 10; ++s) {
    PointSet p = RandomPointSet(10, 2, 300 + s, 4);
    for (int t = 0; t < 20; ++t) {
      Vec x = RandomGridPoints(1, 2, 4, g())[0];
      ASSERT_LE(QSensitivityAudit(p, x, 8).max_diff, 1);
    }
  }
}

TEST(QAudit, DuplicatePointAndTinyM) {
  PointSet p = RandomPointSet(10, 2, 9, 4);
  EXPECT_LE(QSensitivityAudit(p, p.points[3], 8).max_diff, 1);
  QAudit a = QSensitivityAudit(p, {0.5, 0.5}, 2);
  EXPECT_LE(a.max_diff, 1);
  EXPECT_EQ(a.worst_kappa, 1);
}

// Chains whose deepest level is no smaller than the grid volume floor must
// contain a good pair within the prescribed m.
TEST(GoodPair, ExistsWithinPrescribedM) {
  std::mt19937_64 g(21);
  for (int d : {2, 3}) {
    const int ups = 4;
    const double bits = std::ceil(std::pow(d, 3) * ups + std::pow(d, 3) * std::log2(d));
    const double floor_vol = std::exp2(-bits);
    for (int delta : {1, 2, 5}) {
      const int m = static_cast<int>(PrescribedM(d, ups, delta));
      ASSERT_EQ(m, 4 * static_cast<int>(bits) * delta);
      for (int t = 0; t < 30; ++t) {
        // Every third chain halves slightly too fast at every step.
        std::uniform_real_distribution<double> shrink(t % 3 == 1 ? 0.3 : 0.45, 0.55);
        std::vector<double> v;
        double x = 1.0;
        for (int k = 0; k < m; ++k) {
          v.push_back(x);
          x = std::max(floor_vol, x * (t % 3 == 2 ? 0.49 : shrink(g)));
        }
        ASSERT_TRUE(FindGoodPair(v, delta, m).has_value()) << d << " " << delta;
      }
    }
  }
}

TEST(GoodPair, AbsentWhenHalvingThroughout) {
  std::vector<double> v;
  for (int k = 0; k < 30; ++k) v.push_back(std::ldexp(1.0, -2 * k));
  EXPECT_FALSE(FindGoodPair(v, 1, 30).has_value());
}

}  // namespace
}  // namespace tdp
