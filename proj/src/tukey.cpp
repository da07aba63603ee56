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

#include "tukeydp/tukey.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "tukeydp/simd.hpp"

namespace tdp {

namespace {

constexpr double kCoincidentTol = 1e-12;
constexpr double kAngleTol = 1e-9;
// Points within this distance of a candidate hyperplane count as on it.
constexpr double kPlaneTol = 1e-11;

std::vector<double> ToCols(const std::vector<Vec>& pts, int d) {
  const size_t n = pts.size();
  std::vector<double> cols(n * d);
  for (size_t i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) cols[j * n + i] = pts[i][j];
  return cols;
}

// Closed-halfplane depth of the origin among 2-D vectors; vectors within
// kCoincidentTol of the origin are always counted.
int Depth2DOrigin(const std::vector<std::array<double, 2>>& q) {
  int coincident = 0;
  std::vector<double> ang;
  ang.reserve(q.size());
  for (const auto& v : q) {
    if (std::max(std::abs(v[0]), std::abs(v[1])) <= kCoincidentTol)
      ++coincident;
    else
      ang.push_back(std::atan2(v[1], v[0]));
  }
  const size_t m = ang.size();
  if (m == 0) return coincident;
  std::sort(ang.begin(), ang.end());
  std::vector<double> a2(2 * m);
  for (size_t i = 0; i < m; ++i) {
    a2[i] = ang[i];
    a2[i + m] = ang[i] + 2 * M_PI;
  }
  // For a sweep start just past ang[i], the closed half-turn holds the
  // angles in (ang[i], ang[i] + pi].
  size_t best = m;
  size_t lo = 0, hi = 0;
  for (size_t i = 0; i < m; ++i) {
    lo = std::max(lo, i + 1);
    while (lo < i + m && a2[lo] <= ang[i] + kAngleTol) ++lo;
    hi = std::max(hi, lo);
    while (hi < i + m && a2[hi] <= ang[i] + M_PI + kAngleTol) ++hi;
    best = std::min(best, hi - lo);
  }
  return coincident + static_cast<int>(best);
}

int Depth1D(const Vec& x, const std::vector<Vec>& pts) {
  int le = 0, ge = 0;
  for (const Vec& p : pts) {
    if (p[0] <= x[0] + kCoincidentTol) ++le;
    if (p[0] >= x[0] - kCoincidentTol) ++ge;
  }
  return std::min(le, ge);
}

int Depth2D(const Vec& x, const std::vector<Vec>& pts) {
  std::vector<std::array<double, 2>> q;
  q.reserve(pts.size());
  for (const Vec& p : pts) q.push_back({p[0] - x[0], p[1] - x[1]});
  return Depth2DOrigin(q);
}

// Every open cell of the great-circle arrangement is bounded by an arc of
// some circle q_i-perp; its count equals the projected 2-D depth around
// that circle minus the points positively collinear with q_i.
int Depth3D(const Vec& x, const std::vector<Vec>& pts) {
  int coincident = 0;
  std::vector<Vec> q;
  for (const Vec& p : pts) {
    Vec v = Sub(p, x);
    if (Norm(v) <= kCoincidentTol)
      ++coincident;
    else
      q.push_back(v);
  }
  if (q.empty()) return coincident;
  int best = static_cast<int>(q.size());
  std::vector<std::array<double, 2>> proj(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    Vec a = Normalized(q[i]);
    Rotation r = RotateToAxis(a);
    Vec e1 = r.Row(1), e2 = r.Row(2);
    int pos = 0;
    for (size_t j = 0; j < q.size(); ++j) {
      proj[j] = {Dot(q[j], e1), Dot(q[j], e2)};
      double nq = Norm(q[j]);
      if (std::max(std::abs(proj[j][0]), std::abs(proj[j][1])) <= kCoincidentTol * std::max(1.0, nq)) {
        proj[j] = {0.0, 0.0};
        if (Dot(q[j], a) > 0) ++pos;
      }
    }
    best = std::min(best, Depth2DOrigin(proj) - pos);
  }
  return coincident + best;
}

struct Constraint {
  Halfspace h;
  int count;  // points strictly in the open complement
};

void EnumerateConstraints(const PointSet& ps, int max_count,
                          std::vector<std::vector<Halfspace>>& by_count) {
  const int d = ps.dim;
  const size_t n = ps.size();
  by_count.assign(std::max(0, max_count + 1), {});
  auto consider = [&](Vec u, double c) {
    simd::SideCount sc = simd::CountSides(ps.cols.data(), n, d, u.data(), c, kPlaneTol);
    if (static_cast<int>(sc.above) <= max_count) by_count[sc.above].push_back({u, c});
    if (static_cast<int>(sc.below) <= max_count)
      by_count[sc.below].push_back({Scale(u, -1.0), -c});
  };
  const auto& p = ps.points;
  if (d == 1) {
    for (size_t i = 0; i < n; ++i) consider({1.0}, p[i][0]);
  } else if (d == 2) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        Vec u{p[i][1] - p[j][1], p[j][0] - p[i][0]};
        double len = Norm(u);
        if (len <= kCoincidentTol) continue;
        u = Scale(u, 1.0 / len);
        consider(u, Dot(u, p[i]));
      }
  } else if (d == 3) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        Vec e1 = Sub(p[j], p[i]);
        for (size_t k = j + 1; k < n; ++k) {
          Vec u = Cross3(e1, Sub(p[k], p[i]));
          double len = Norm(u);
          if (len <= 1e-12) continue;
          u = Scale(u, 1.0 / len);
          consider(u, Dot(u, p[i]));
        }
      }
  } else {
    throw Error(ErrorCode::kUnsupportedDimension, "Tukey regions need d <= 3");
  }
}

}  // namespace

PointSet PointSet::Make(std::vector<Vec> pts, int grid_exp, bool validate) {
  PointSet ps;
  ps.grid_exp = grid_exp;
  if (pts.empty()) throw Error(ErrorCode::kInvalidArgument, "empty point set");
  ps.dim = static_cast<int>(pts[0].size());
  if (ps.dim < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  std::vector<size_t> bad;
  const double g = std::ldexp(1.0, grid_exp);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (static_cast<int>(pts[i].size()) != ps.dim)
      throw Error(ErrorCode::kInvalidArgument, "ragged point dimensions");
    for (double& x : pts[i]) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, "non-finite coordinate");
      if (!validate) continue;
      double snapped = std::round(x * g) / g;
      if (x < -1e-12 || x > 1 + 1e-12 || std::abs(snapped - x) > 1e-12) {
        bad.push_back(i);
        break;
      }
      x = snapped;
    }
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "rows off the 2^-" << grid_exp << " grid or outside [0,1]:";
    for (size_t k = 0; k < bad.size() && k < 20; ++k) os << ' ' << bad[k];
    if (bad.size() > 20) os << " ...";
    throw Error(ErrorCode::kOffGridPoint, os.str());
  }
  if (validate && static_cast<int>(pts.size()) < ps.dim + 1)
    throw Error(ErrorCode::kInvalidArgument, "need at least d+1 points");
  ps.points = std::move(pts);
  ps.cols = ToCols(ps.points, ps.dim);
  return ps;
}

PointSet PointSet::With(const Vec& extra) const {
  std::vector<Vec> pts = points;
  pts.push_back(extra);
  return Make(std::move(pts), grid_exp, false);
}

int TukeyDepth(const Vec& x, const std::vector<Vec>& points) {
  const int d = static_cast<int>(x.size());
  if (d == 1) return Depth1D(x, points);
  if (d == 2) return Depth2D(x, points);
  if (d == 3) return Depth3D(x, points);
  throw Error(ErrorCode::kUnsupportedDimension, "exact depth needs d <= 3");
}

RegionChain::RegionChain(int dim, std::vector<Polytope> regions)
    : dim_(dim), regions_(std::move(regions)) {
  for (const Polytope& p : regions_) vcols_.push_back(ToCols(p.vertices, dim_));
}

RegionChain RegionChain::Rotated(const Rotation& r) const {
  std::vector<Polytope> reg;
  for (const Polytope& p : regions_) reg.push_back(Transform(p, r));
  return RegionChain(dim_, std::move(reg));
}

RegionChain RegionChain::Projected(const std::vector<Vec>& basis) const {
  std::vector<Polytope> reg;
  for (const Polytope& p : regions_) reg.push_back(ProjectToBasis(p, basis));
  return RegionChain(static_cast<int>(basis.size()), std::move(reg));
}

RegionChain RegionChain::Truncated(int k) const {
  k = std::clamp(k, 0, kappa_max());
  return RegionChain(dim_, std::vector<Polytope>(regions_.begin(), regions_.begin() + k));
}

RegionChain BuildRegionChain(const PointSet& ps, int kappa_max) {
  const int d = ps.dim;
  if (d > 3) throw Error(ErrorCode::kUnsupportedDimension, "Tukey regions need d <= 3");
  kappa_max = std::min<int>(kappa_max, static_cast<int>(ps.size()));
  if (kappa_max <= 0) return RegionChain(d, {});
  std::vector<std::vector<Halfspace>> by_count;
  EnumerateConstraints(ps, kappa_max - 1, by_count);
  std::vector<Polytope> regions;
  Polytope cur = HullAny(ps.points, d);
  regions.push_back(cur);
  for (int k = 2; k <= kappa_max; ++k) {
    for (const Halfspace& h : by_count[k - 1]) {
      cur = Clip(cur, h);
      if (cur.IsEmpty()) break;
    }
    if (cur.IsEmpty()) break;
    regions.push_back(cur);
  }
  return RegionChain(d, std::move(regions));
}

std::optional<Polytope> TukeyRegion(const PointSet& ps, int kappa) {
  if (kappa < 1) throw Error(ErrorCode::kInvalidArgument, "kappa must be >= 1");
  RegionChain c = BuildRegionChain(ps, kappa);
  if (!c.Has(kappa)) return std::nullopt;
  return c.At(kappa);
}

}  // namespace tdp
