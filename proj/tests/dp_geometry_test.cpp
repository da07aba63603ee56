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

#include "tukeydp/dp_geometry.hpp"

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace tdp {
namespace {

using testing::RandomPointSet;
using testing::RandomUnit;
using testing::Square;

DPParams Params(int kappa, double alpha = 0.1, double eps = 1.0) {
  DPParams p;
  p.kappa = kappa;
  p.alpha = alpha;
  p.epsilon = eps;
  return p;
}

// Exact max of <x - p, v> over a region.
double MaxProj(const Polytope& r, const Vec& p, const Vec& v) {
  return SupportRange(r, v).second - Dot(p, v);
}

struct Instance {
  PointSet points;
  RegionModel model;
  int kappa;
};

// Random instance with a region of moderate depth; chains are shared
// between tests since the 3-D ones dominate the run time.
const Instance& MakeInstance(int d, uint64_t seed) {
  static std::map<std::pair<int, uint64_t>, Instance> cache;
  auto it = cache.find({d, seed});
  if (it != cache.end()) return it->second;
  int n = d == 2 ? 60 : 30;
  PointSet ps = RandomPointSet(n, d, seed);
  RegionModel m = RegionModel::FromPoints(ps);
  int k = std::max(1, m.chain.kappa_max() / 2);
  return cache.emplace(std::make_pair(d, seed), Instance{ps, m, k}).first->second;
}

TEST(PointInRegion, DisabledSquareCenter) {
  NoiseSource n = NoiseSource::Disabled();
  RegionModel m = RegionModel::FromPoints(Square());
  auto r = DpPointInRegion(m, Params(2), n);
  EXPECT_DOUBLE_EQ(r.point[0], 0.5);
  EXPECT_DOUBLE_EQ(r.point[1], 0.5);
  EXPECT_EQ(r.report.budget.entries().size(), 2u);
  EXPECT_DOUBLE_EQ(r.report.budget.epsilon_spent(), 1.0);
  EXPECT_THROW(DpPointInRegion(m, Params(3), n), Error);
}

TEST(PointInRegion, DisabledDepthAtLeastKappa) {
  NoiseSource n = NoiseSource::Disabled();
  for (int d : {2, 3}) {
    for (uint64_t s = 0; s < 5; ++s) {
      const Instance& in = MakeInstance(d, 100 + s);
      for (int k : {1, in.kappa, in.model.chain.kappa_max()}) {
        auto r = DpPointInRegion(in.model, Params(k), n);
        EXPECT_GE(TukeyDepth(r.point, in.points), k) << "d=" << d << " seed=" << s;
      }
    }
  }
}

TEST(PointInRegion, SeededUniform100) {
  PointSet ps = RandomPointSet(100, 2, 9);
  RegionModel m = RegionModel::FromPoints(ps);
  DPParams prm = Params(5, 0.1, 10.0);
  int ok = 0;
  double slack = 0;
  for (uint64_t s = 0; s < 100; ++s) {
    NoiseSource n = NoiseSource::Seeded(s);
    auto r = DpPointInRegion(m, prm, n);
    slack = r.report.delta_depth;
    ok += TukeyDepth(r.point, ps) >= prm.kappa - slack;
  }
  EXPECT_GE(ok, 90);
}

TEST(PairAtDistance, DisabledSquareExamples) {
  NoiseSource n = NoiseSource::Disabled();
  RegionModel m = RegionModel::FromPoints(Square());
  auto p = DpPairAtDistance(m, 1.0, Params(1), n);
  EXPECT_DOUBLE_EQ(p.x[0], 0.0);
  EXPECT_DOUBLE_EQ(p.y[0], 1.0);
  EXPECT_GE(TukeyDepth(p.x, Square()), 1);
  EXPECT_GE(TukeyDepth(p.y, Square()), 1);
  EXPECT_FALSE(p.low_depth);
  EXPECT_EQ(p.report.budget.invocations(), 3);

  auto c = DpPairAtDistance(m, 0.0, Params(2), n);
  EXPECT_DOUBLE_EQ(c.x[0], 0.5);
  EXPECT_DOUBLE_EQ(c.x[1], 0.5);
  EXPECT_DOUBLE_EQ(c.y[0], 0.5);
  EXPECT_DOUBLE_EQ(c.y[1], 0.5);

  auto far = DpPairAtDistance(m, 2.0, Params(1), n);
  EXPECT_TRUE(far.low_depth);
  EXPECT_DOUBLE_EQ(far.y[0] - far.x[0], 2.0);
}

TEST(Diameter, DisabledSquare) {
  NoiseSource n = NoiseSource::Disabled();
  RegionModel m = RegionModel::FromPoints(Square());
  auto r = DpDiameter(m, Params(1), n);
  EXPECT_GE(r.value, 0.9 * std::sqrt(2.0));
  EXPECT_LE(r.value, std::sqrt(2.0) + 1e-12);
  EXPECT_DOUBLE_EQ(r.budget.epsilon_spent(), 1.0);
  auto c = DpDiameter(m, Params(2), n);
  EXPECT_EQ(c.value, 0.0);
  EXPECT_FALSE(c.halted);
}

TEST(Diameter, DeltaMatchesClosedForm) {
  NoiseSource n = NoiseSource::Disabled();
  RegionModel m = RegionModel::FromPoints(Square());
  DPParams prm = Params(1, 0.1, 2.0);
  auto r = DpDiameter(m, prm, n);
  int T = static_cast<int>(std::ceil((2.0 * 8 + std::log(2.0)) / 0.1));
  EXPECT_EQ(r.terms.at("T"), T);
  EXPECT_DOUBLE_EQ(r.delta_depth, 12.0 * std::log((T + 2) / 0.05) / 2.0);
}

// Disabled-mode sandwich and query monotonicity on random instances.
TEST(Diameter, DisabledSandwichRandom) {
  NoiseSource n = NoiseSource::Disabled();
  int count = 0;
  for (int d : {2, 3}) {
    for (uint64_t s = 0; s < 25; ++s) {
      const Instance& in = MakeInstance(d, 100 + s);
      double diam = DiameterExact(in.model.chain.At(in.kappa)).value;
      auto r = DpDiameter(in.model, Params(in.kappa), n);
      EXPECT_GE(r.value, 0.9 * diam - 1e-9) << "d=" << d << " seed=" << s;
      EXPECT_LE(r.value, diam + 1e-9) << "d=" << d << " seed=" << s;
      for (size_t i = 1; i < r.queries.size(); ++i) EXPECT_GE(r.queries[i], r.queries[i - 1]);
      ++count;
    }
  }
  EXPECT_EQ(count, 50);
}

TEST(Width, DisabledSquare) {
  NoiseSource n = NoiseSource::Disabled();
  RegionModel m = RegionModel::FromPoints(Square());
  auto r = DpWidth(m, Params(1), std::sqrt(2.0), 0.5, n);
  EXPECT_GE(r.value, 0.9);
  EXPECT_LE(r.value, 1.1);
  EXPECT_THROW(DpWidth(m, Params(1), std::sqrt(2.0), 0.0, n), Error);
}

TEST(Width, DisabledThinRectangle) {
  NoiseSource n = NoiseSource::Disabled();
  const double h = 13.0 / 256;  // nearest grid value to 0.05
  PointSet thin = PointSet::Make({{0, 0}, {1, 0}, {1, h}, {0, h}}, 8);
  RegionModel m = RegionModel::FromPoints(thin);
  auto r = DpWidth(m, Params(1), std::sqrt(2.0), 0.01, n);
  EXPECT_GE(r.value, 0.9 * h);
  EXPECT_LE(r.value, 1.1 * h);
}

TEST(Width, DisabledSandwichRandom) {
  NoiseSource n = NoiseSource::Disabled();
  for (int d : {2, 3}) {
    const double alpha = d == 2 ? 0.1 : 0.4;
    const int count = d == 2 ? 40 : 10;
    for (int s = 0; s < count; ++s) {
      const Instance& in = MakeInstance(d, 100 + s);
      const Polytope& reg = in.model.chain.At(in.kappa);
      double w = WidthExact(reg).value;
      double D = DiameterExact(reg).value;
      auto r = DpWidth(in.model, Params(in.kappa, alpha), D, 0.5 * w, n);
      EXPECT_GE(r.value, (1 - alpha) * w - 1e-9) << "d=" << d << " seed=" << s;
      EXPECT_LE(r.value, (1 + alpha) * w + 1e-9) << "d=" << d << " seed=" << s;
    }
  }
}

TEST(MaxProjection, DisabledSquare) {
  NoiseSource n = NoiseSource::Disabled();
  RegionModel m = RegionModel::FromPoints(Square());
  auto r = DpMaxProjection(m, Params(1), {1, 0}, {0.5, 0.5}, std::sqrt(2.0), n);
  EXPECT_GE(r.value, 0.45);
  EXPECT_LE(r.value, 0.5);
  auto edge = DpMaxProjection(m, Params(1), {1, 0}, {1.0, 0.5}, std::sqrt(2.0), n);
  EXPECT_EQ(edge.value, 0.0);
  EXPECT_FALSE(edge.halted);
  auto c = DpMaxProjection(m, Params(2), {0.6, 0.8}, {0.5, 0.5}, std::sqrt(2.0), n);
  EXPECT_EQ(c.value, 0.0);
}

TEST(MaxProjection, DisabledSandwichRandom) {
  NoiseSource n = NoiseSource::Disabled();
  std::mt19937_64 g(5);
  for (int d : {2, 3}) {
    for (int s = 0; s < 25; ++s) {
      const Instance& in = MakeInstance(d, 100 + s);
      const Polytope& reg = in.model.chain.At(in.kappa);
      Vec p = VertexCentroid(reg);
      Vec v = RandomUnit(g, d);
      double mp = MaxProj(reg, p, v);
      auto r = DpMaxProjection(in.model, Params(in.kappa), v, p, std::sqrt(d), n);
      EXPECT_GE(r.value, 0.9 * mp - 1e-9) << "d=" << d << " seed=" << s;
      EXPECT_LE(r.value, mp + 1e-9) << "d=" << d << " seed=" << s;
    }
  }
}

TEST(LargeTdcDirection, DisabledExamples) {
  NoiseSource n = NoiseSource::Disabled();
  RegionModel m = RegionModel::FromPoints(Square());
  std::vector<Vec> V = {{1, 0}, {0, 1}};
  auto r = DpLargeTdcDirection(m, Params(1), V, {0.5, 0.5}, 0.5, n);
  ASSERT_TRUE(r.direction.has_value());
  EXPECT_EQ(r.index, 0);
  auto none = DpLargeTdcDirection(m, Params(1), V, {0.5, 0.5}, 10.0, n);
  EXPECT_FALSE(none.direction.has_value());
  std::vector<Vec> W = {{0, 1}, {1, 0}};
  auto zero = DpLargeTdcDirection(m, Params(1), W, {0.5, 0.5}, 0.0, n);
  EXPECT_EQ(zero.index, 0);
  EXPECT_DOUBLE_EQ(zero.report.delta_depth, 12.0 * std::log(3.0 / 0.05) / 1.0);
}

// Noisy runs at eps = 10: each guaranteed sandwich holds in >= 90% of seeds,
// with the lower-depth region D(kappa - Delta) read as all of space when
// kappa - Delta < 1.
class NoisyUtility : public ::testing::Test {
 protected:
  void SetUp() override {
    ps_ = RandomPointSet(100, 2, 4242);
    model_ = RegionModel::FromPoints(ps_);
  }
  // Max over the region of depth >= k; infinite when k < 1.
  const Polytope* Region(double k) const {
    int kk = static_cast<int>(std::ceil(k - 1e-12));
    if (kk < 1) return nullptr;
    return &model_.chain.At(std::min(kk, model_.chain.kappa_max()));
  }
  PointSet ps_;
  RegionModel model_;
};

TEST_F(NoisyUtility, Diameter) {
  for (int kappa : {5, 20}) {
    DPParams prm = Params(kappa, 0.1, 10.0);
    int ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
      NoiseSource n = NoiseSource::Seeded(1000 + s);
      auto r = DpDiameter(model_, prm, n);
      double lo = 0.9 * DiameterExact(model_.chain.At(kappa)).value;
      const Polytope* outer = Region(kappa - r.delta_depth);
      double hi = outer ? DiameterExact(*outer).value : INFINITY;
      ok += r.value >= lo - 1e-9 && r.value <= hi + 1e-9;
    }
    EXPECT_GE(ok, 90) << "kappa=" << kappa;
  }
}

TEST_F(NoisyUtility, Width) {
  for (int kappa : {5, 20}) {
    DPParams prm = Params(kappa, 0.1, 10.0);
    int ok = 0;
    double w = WidthExact(model_.chain.At(kappa)).value;
    for (uint64_t s = 0; s < 100; ++s) {
      NoiseSource n = NoiseSource::Seeded(2000 + s);
      auto r = DpWidth(model_, prm, std::sqrt(2.0), 0.5 * w, n);
      const Polytope* outer = Region(kappa - r.delta_depth);
      double hi = outer ? 1.1 * WidthExact(*outer).value : INFINITY;
      ok += r.value >= 0.9 * w - 1e-9 && r.value <= hi + 1e-9;
    }
    EXPECT_GE(ok, 90) << "kappa=" << kappa;
  }
}

TEST_F(NoisyUtility, MaxProjection) {
  std::mt19937_64 g(77);
  for (int kappa : {5, 20}) {
    DPParams prm = Params(kappa, 0.1, 10.0);
    const Polytope& reg = model_.chain.At(kappa);
    Vec p = VertexCentroid(reg);
    int ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
      Vec v = RandomUnit(g, 2);
      NoiseSource n = NoiseSource::Seeded(3000 + s);
      auto r = DpMaxProjection(model_, prm, v, p, std::sqrt(2.0), n);
      const Polytope* outer = Region(kappa - r.delta_depth);
      double hi = outer ? MaxProj(*outer, p, v) : INFINITY;
      ok += r.value >= 0.9 * MaxProj(reg, p, v) - 1e-9 && r.value <= hi + 1e-9;
    }
    EXPECT_GE(ok, 90) << "kappa=" << kappa;
  }
}

TEST_F(NoisyUtility, LargeTdcDirection) {
  AngleCover cov = MakeAngleCover(0.3, 2);
  for (int kappa : {5, 20}) {
    DPParams prm = Params(kappa, 0.1, 10.0);
    const Polytope& reg = model_.chain.At(kappa);
    Vec p = VertexCentroid(reg);
    // A step that some depth-kappa point reaches along most directions.
    double lambda = 0.5 * MaxProj(reg, p, cov.directions[0]);
    int ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
      NoiseSource n = NoiseSource::Seeded(4000 + s);
      auto r = DpLargeTdcDirection(model_, prm, cov.directions, p, lambda, n);
      if (!r.direction) continue;
      const Polytope* outer = Region(kappa - r.report.delta_depth);
      bool reach = !outer || MaxProj(*outer, p, *r.direction) >= lambda - 1e-9;
      ok += reach;
    }
    EXPECT_GE(ok, 90) << "kappa=" << kappa;
  }
}

TEST_F(NoisyUtility, PointInRegion) {
  DPParams prm = Params(20, 0.1, 10.0);
  int ok = 0;
  for (uint64_t s = 0; s < 100; ++s) {
    NoiseSource n = NoiseSource::Seeded(5000 + s);
    auto r = DpPointInRegion(model_, prm, n);
    ok += TukeyDepth(r.point, ps_) >= prm.kappa - r.report.delta_depth;
  }
  EXPECT_GE(ok, 90);
}

}  // namespace
}  // namespace tdp
