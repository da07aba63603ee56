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

#include "tukeydp/bbox.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tdp {

double OrientedBox::Volume() const {
  double v = 1.0;
  for (const auto& [lo, hi] : intervals) v *= hi - lo;
  return v;
}

bool OrientedBox::Contains(const Vec& x, double tol) const {
  for (int j = 0; j < dim(); ++j) {
    double p = Dot(x, axes[j]);
    if (p < intervals[j].first - tol || p > intervals[j].second + tol) return false;
  }
  return true;
}

std::vector<Vec> OrientedBox::Corners() const {
  const int d = dim();
  std::vector<Vec> out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec x(axes.empty() ? 0 : axes[0].size(), 0.0);
    for (int j = 0; j < d; ++j) {
      double t = (mask >> j & 1) ? intervals[j].second : intervals[j].first;
      x = Add(x, Scale(axes[j], t));
    }
    out.push_back(x);
  }
  return out;
}

namespace {

std::vector<Vec> Identity(int d) {
  std::vector<Vec> f(d, Vec(d, 0.0));
  for (int i = 0; i < d; ++i) f[i][i] = 1.0;
  return f;
}

// Rows 2..j of the rotation taking u to e_1: an orthonormal basis of u's
// complement.
std::vector<Vec> Complement(const Vec& u) {
  Rotation r = RotateToAxis(u);
  std::vector<Vec> q;
  for (int i = 1; i < r.dim; ++i) q.push_back(r.Row(i));
  return q;
}

// Global direction of a local one: F^T u.
Vec Lift(const std::vector<Vec>& frame, const Vec& u) {
  Vec g(frame[0].size(), 0.0);
  for (size_t i = 0; i < frame.size(); ++i) g = Add(g, Scale(frame[i], u[i]));
  return g;
}

std::vector<Vec> Compose(const std::vector<Vec>& q, const std::vector<Vec>& frame) {
  std::vector<Vec> out;
  for (const Vec& row : q) out.push_back(Lift(frame, row));
  return out;
}

}  // namespace

OrientedBox BboxNonPrivate(const Polytope& p, double gamma) {
  if (!(gamma >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be >= 1");
  if (!p.IsFullDim()) throw Error(ErrorCode::kDegenerateInput, "bounding box needs a full-dimensional body");
  OrientedBox box;
  std::vector<Vec> frame = Identity(p.dim);
  Polytope cur = p;
  for (int j = p.dim; j >= 2; --j) {
    DiameterResult dr = DiameterExact(cur);
    Vec u = Normalized(Sub(dr.q, dr.p));
    box.axes.push_back(Lift(frame, u));
    box.intervals.push_back(SupportRange(cur, u));
    box.degenerate.push_back(false);
    std::vector<Vec> q = Complement(u);
    cur = ProjectToBasis(cur, q);
    frame = Compose(q, frame);
  }
  box.axes.push_back(frame[0]);
  box.intervals.push_back(SupportRange(cur, {1.0}));
  box.degenerate.push_back(false);
  return box;
}

OrientedBox BboxNonPrivate(const std::vector<Vec>& points, double gamma) {
  if (points.empty()) throw Error(ErrorCode::kDegenerateInput, "no points");
  return BboxNonPrivate(ConvexHull(points), gamma);
}

BoxEstimate BboxPrivate(const RegionModel& m, const DPParams& prm, NoiseSource& noise) {
  prm.Validate();
  const int d = m.dim();
  const int k = d * d + 2 * d - 1;
  const double eps0 = prm.epsilon / k, delta0 = prm.delta / k, beta0 = prm.beta / k;
  const double zeta = std::acos(0.1);
  const double diam_alpha = 0.1;  // ell >= 0.9 diam

  BoxEstimate out;
  EstimateReport& rep = out.report;
  auto charge = [&](const char* tag, int times) {
    for (int i = 0; i < times; ++i) rep.budget.Charge(tag, eps0, delta0);
  };
  const double delta_diam = SvtDelta(DiameterSteps(diam_alpha, m.grid_exp, d), eps0, beta0);
  const double delta_dir = LargeTdcDirectionDelta(AngleCoverSize(zeta, d), eps0, beta0);
  const double alpha_qc = QcAlpha(QcDomain::RotatedGrid(m.grid_exp, d).levels, eps0, beta0);
  rep.terms["delta_diam"] = delta_diam;
  rep.terms["delta_direction"] = delta_dir;
  rep.terms["d_alpha_qc"] = d * alpha_qc;
  rep.terms["calls"] = k;
  rep.delta_depth = delta_diam + delta_dir + d * alpha_qc;

  DPParams dp = prm;
  dp.epsilon = eps0;
  dp.delta = 0.0;
  dp.alpha = diam_alpha;
  dp.beta = beta0;
  DPParams dirp = dp;
  dirp.kappa = noise.disabled() ? prm.kappa
                                : std::max(1, static_cast<int>(std::ceil(prm.kappa - delta_diam)));

  // Diameter estimate; an empty sweep falls back to its shortest length,
  // which still bounds the extent.
  auto diameter = [&](const RegionModel& cur, bool& degenerate) {
    EstimateReport dr = DpDiameter(cur, dp, noise);
    charge("bbox_diameter", 1);
    if (dr.value > 0) return dr.value;
    degenerate = true;
    return dr.terms.at("smallest_length");
  };

  std::map<int, AngleCover> covers;
  RegionModel cur = m;
  std::vector<Vec> frame = Identity(d);
  for (int j = d; j >= 2; --j) {
    bool degenerate = false;
    Vec s = DpComplete(cur, {}, eps0, noise, nullptr, "");
    charge("bbox_point", j);
    const double ell = diameter(cur, degenerate);
    Vec u(j, 0.0);
    if (degenerate) {
      // Region thinner than the sweep resolves: any axis will do. The
      // skipped calls are still charged.
      u[0] = 1.0;
      charge("bbox_direction", 1);
      charge("bbox_completion", j - 1);
    } else {
      if (!covers.count(j)) covers.emplace(j, MakeAngleCover(zeta, j));
      DirectionEstimate dir =
          DpLargeTdcDirection(cur, dirp, covers.at(j).directions, s, 0.45 * ell, noise);
      charge("bbox_direction", 1);
      if (!dir.direction)
        throw Error(ErrorCode::kBoxSearchFailed,
                    "no cover direction reaches 0.45 ell at dimension " + std::to_string(j));
      const Vec v = *dir.direction;
      const Rotation r = RotateToAxis(v);
      Vec t = r.ApplyInverse(
          DpComplete(cur.Rotated(r), {Dot(s, v) + 0.45 * ell}, eps0, noise, nullptr, ""));
      charge("bbox_completion", j - 1);
      u = Sub(t, s);
      if (Norm(u) <= 1e-12) {
        u = v;
        degenerate = true;
      }
      u = Normalized(u);
    }
    const double c0 = Dot(s, u);
    out.box.axes.push_back(Lift(frame, u));
    out.box.intervals.push_back({c0 - 10.0 / 9.0 * ell, c0 + 10.0 / 9.0 * ell});
    out.box.degenerate.push_back(degenerate);
    rep.queries.push_back(ell);
    std::vector<Vec> q = Complement(u);
    cur = cur.Projected(q);
    frame = Compose(q, frame);
  }
  bool degenerate = false;
  Vec s = DpComplete(cur, {}, eps0, noise, nullptr, "");
  charge("bbox_point", 1);
  const double ell = diameter(cur, degenerate);
  out.box.axes.push_back(frame[0]);
  out.box.intervals.push_back({s[0] - 10.0 / 9.0 * ell, s[0] + 10.0 / 9.0 * ell});
  out.box.degenerate.push_back(degenerate);
  rep.queries.push_back(ell);
  rep.value = out.box.Volume();
  return out;
}

Vec FatteningTransform::Forward(const Vec& x) const {
  Vec y(dim);
  for (int j = 0; j < dim; ++j) y[j] = (Dot(x, axes[j]) - lo[j]) / scale[j];
  return y;
}

Vec FatteningTransform::Inverse(const Vec& y) const {
  Vec x(dim, 0.0);
  for (int j = 0; j < dim; ++j) x = Add(x, Scale(axes[j], lo[j] + y[j] * scale[j]));
  return x;
}

Polytope FatteningTransform::Apply(const Polytope& p) const {
  std::vector<Vec> pts;
  for (const Vec& v : p.vertices) pts.push_back(Forward(v));
  Polytope q = HullAny(pts, dim);
  if (!clamped) return q;
  for (int i = 0; i < dim && !q.IsEmpty(); ++i) {
    Vec e(dim, 0.0);
    e[i] = 1.0;
    q = Clip(q, {e, 1.0});
    e[i] = -1.0;
    q = Clip(q, {e, 0.0});
  }
  return q;
}

double FatteningTransform::Determinant() const {
  double det = 1.0;
  for (double s : scale) det /= s;
  return det;
}

FatteningTransform MakeFatteningTransform(const OrientedBox& box, bool clamped) {
  FatteningTransform t;
  t.dim = box.dim();
  t.axes = box.axes;
  t.clamped = clamped;
  for (const auto& [lo, hi] : box.intervals) {
    t.lo.push_back(lo);
    // A point interval keeps unit scale so the map stays invertible.
    t.scale.push_back(hi - lo > 1e-15 ? hi - lo : 1.0);
  }
  return t;
}

RegionModel TransformModel(const RegionModel& m, const FatteningTransform& t) {
  std::vector<Polytope> regions;
  for (const Polytope& p : m.chain.regions()) {
    Polytope q = t.Apply(p);
    if (q.IsEmpty()) break;
    regions.push_back(std::move(q));
  }
  RegionModel out;
  out.chain = RegionChain(t.dim, std::move(regions));
  out.grid_exp = m.grid_exp;
  out.ambient_dim = t.dim;
  out.unit_frame = true;
  return out;
}

}  // namespace tdp
