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

#include <algorithm>
#include <cmath>

namespace tdp {

void DPParams::Validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  if (!(delta >= 0) || delta >= 1) throw Error(ErrorCode::kInvalidArgument, "delta must be in [0,1)");
  if (!(alpha > 0 && alpha < 0.5)) throw Error(ErrorCode::kInvalidArgument, "alpha must be in (0,1/2)");
  if (!(beta > 0 && beta < 0.5)) throw Error(ErrorCode::kInvalidArgument, "beta must be in (0,1/2)");
  if (kappa < 1) throw Error(ErrorCode::kInvalidArgument, "kappa must be >= 1");
}

RegionModel RegionModel::FromPoints(const PointSet& p, int kappa_max) {
  RegionModel m;
  m.chain = BuildRegionChain(p, kappa_max > 0 ? kappa_max : static_cast<int>(p.size()));
  m.grid_exp = p.grid_exp;
  m.ambient_dim = p.dim;
  m.unit_frame = true;
  return m;
}

QcDomain RegionModel::Domain() const {
  return unit_frame ? QcDomain::UnitGrid(grid_exp) : QcDomain::RotatedGrid(grid_exp, ambient_dim);
}

RegionModel RegionModel::Rotated(const Rotation& r) const {
  RegionModel m = *this;
  m.chain = chain.Rotated(r);
  m.unit_frame = false;
  return m;
}

RegionModel RegionModel::Projected(const std::vector<Vec>& basis) const {
  RegionModel m = *this;
  m.chain = chain.Projected(basis);
  m.unit_frame = false;
  return m;
}

int RegionModel::Depth(const Vec& x) const {
  const int d = dim();
  Vec prefix(x.begin(), x.begin() + (d - 1));
  return TdcEval(TdcPrecompute(chain, prefix), x[d - 1]);
}

double SvtDelta(int T, double epsilon, double beta) {
  return 12.0 * std::log((T + 2) / beta) / epsilon;
}

int DiameterSteps(double alpha, int grid_exp, int dim) {
  return static_cast<int>(std::ceil((2.0 * grid_exp + std::log(static_cast<double>(dim))) / alpha));
}

int WidthSteps(double alpha, double d_upper, double b_lower) {
  return std::max(0, static_cast<int>(std::ceil(2.0 * std::log(d_upper / b_lower) / alpha)));
}

int MaxProjectionSteps(double alpha, int grid_exp, double d_upper) {
  return std::max(0, static_cast<int>(std::ceil((2.0 * grid_exp + 2.0 * std::log(d_upper)) / alpha)));
}

double LargeTdcDirectionDelta(size_t cover_size, double epsilon, double beta) {
  return 12.0 * std::log((static_cast<double>(cover_size) + 1.0) / beta) / epsilon;
}

namespace {

IntervalOracle TdcOracle(const NestedIntervals& ni) {
  return [&ni](double p, double q) {
    EvalResult r = TdcEvalInterval(ni, p, q);
    return IntervalMax{static_cast<double>(r.value), r.witness};
  };
}

IntervalOracle LtdcOracle(const NestedIntervals& ni, double ell) {
  return [&ni, ell](double p, double q) {
    EvalResult r = LtdcEvalInterval(ni, ell, p, q);
    return IntervalMax{static_cast<double>(r.value), r.witness};
  };
}

void Record(EstimateReport& rep, const SvtResult& s) {
  rep.queries = s.values;
  rep.noisy = s.noisy;
  rep.halted = s.halt.has_value();
  rep.halt_index = s.halt ? *s.halt : -1;
}

double Geometric(double start, double alpha, int i) { return start * std::pow(1.0 - alpha / 2.0, i); }

}  // namespace

Vec DpComplete(const RegionModel& m, Vec prefix, double eps_each, NoiseSource& noise,
               PrivacyBudget* budget, const std::string& tag) {
  const QcDomain dom = m.Domain();
  while (static_cast<int>(prefix.size()) < m.dim()) {
    NestedIntervals ni = TdcPrecompute(m.chain, prefix);
    prefix.push_back(DpBinarySearchQc(TdcOracle(ni), dom, eps_each, noise).x);
    if (budget) budget->Charge(tag, eps_each);
  }
  return prefix;
}

PointEstimate DpPointInRegion(const RegionModel& m, const DPParams& prm, NoiseSource& noise) {
  prm.Validate();
  if (prm.kappa > m.chain.kappa_max())
    throw Error(ErrorCode::kEmptyRegion, "region chain ends at depth " +
                                             std::to_string(m.chain.kappa_max()) + " < kappa");
  const int d = m.dim();
  PointEstimate out;
  const double eps = prm.epsilon / d;
  out.point = DpComplete(m, {}, eps, noise, &out.report.budget, "point_in_region");
  out.depth = m.Depth(out.point);
  out.report.value = out.depth;
  out.report.delta_depth = d * QcAlpha(m.Domain().levels, eps, prm.beta / d);
  out.report.terms["alpha_qc"] = QcAlpha(m.Domain().levels, eps, prm.beta / d);
  return out;
}

PairEstimate DpPairAtDistance(const RegionModel& m, double ell, const DPParams& prm,
                              NoiseSource& noise) {
  prm.Validate();
  const int d = m.dim();
  const double eps = prm.epsilon / (2 * d - 1);
  PairEstimate out;
  NestedIntervals first = TdcPrecompute(m.chain, {});
  double x1 = DpBinarySearchQc(LtdcOracle(first, ell), m.Domain(), eps, noise).x;
  out.report.budget.Charge("pair_first_coordinate", eps);
  out.x = DpComplete(m, {x1}, eps, noise, &out.report.budget, "pair_completion");
  out.y = DpComplete(m, {x1 + ell}, eps, noise, &out.report.budget, "pair_completion");
  out.depth_x = m.Depth(out.x);
  out.depth_y = m.Depth(out.y);
  out.low_depth = std::min(out.depth_x, out.depth_y) < prm.kappa;
  out.report.value = ell;
  out.report.delta_depth = (2 * d - 1) * QcAlpha(m.Domain().levels, eps, prm.beta / (2 * d - 1));
  return out;
}

EstimateReport DpDiameter(const RegionModel& m, const DPParams& prm, NoiseSource& noise) {
  prm.Validate();
  const int d = m.dim();
  // Projected chains keep the ambient diameter bound.
  const int da = std::max(d, m.ambient_dim);
  const double zeta = std::sqrt(prm.alpha / 2.0);
  const int T = DiameterSteps(prm.alpha, m.grid_exp, da);
  AngleCover cov = MakeAngleCover(zeta, d);
  std::vector<NestedIntervals> support;
  support.reserve(cov.directions.size());
  for (const Vec& v : cov.directions) support.push_back(SupportIntervals(m.chain, v));
  const double start = std::sqrt(static_cast<double>(da));
  auto query = [&](int i) {
    double ell = Geometric(start, prm.alpha, i);
    int best = 0;
    for (const auto& ni : support) best = std::max(best, LtdcMax(ni, ell));
    return static_cast<double>(best);
  };
  const double margin = 6.0 * std::log((T + 2) / prm.beta) / prm.epsilon;
  SvtResult s = SvtRun(T + 1, query, prm.kappa, prm.epsilon, margin, noise);
  EstimateReport rep;
  Record(rep, s);
  rep.value = s.halt ? Geometric(start, prm.alpha, *s.halt) : 0.0;
  rep.delta_depth = SvtDelta(T, prm.epsilon, prm.beta);
  rep.budget.Charge("dp_diameter", prm.epsilon);
  rep.terms["T"] = T;
  rep.terms["zeta"] = zeta;
  rep.terms["cover_size"] = static_cast<double>(cov.directions.size());
  rep.terms["smallest_length"] = Geometric(start, prm.alpha, T);
  return rep;
}

EstimateReport DpWidth(const RegionModel& m, const DPParams& prm, double d_upper, double b_lower,
                       NoiseSource& noise) {
  prm.Validate();
  if (!(b_lower > 0)) throw Error(ErrorCode::kInvalidArgument, "width lower bound must be > 0");
  if (!(d_upper > 0)) throw Error(ErrorCode::kInvalidArgument, "diameter upper bound must be > 0");
  const int d = m.dim();
  const int T = WidthSteps(prm.alpha, d_upper, b_lower);
  const double zeta_min = std::min(prm.alpha * b_lower / (4.0 * d_upper), 0.5);
  double last_zeta = -1.0;
  AngleCover cov;
  size_t largest_cover = 0;
  auto query = [&](int i) {
    double ell = Geometric(d_upper, prm.alpha, i);
    double zeta = std::clamp(prm.alpha * ell / (4.0 * d_upper), zeta_min, 0.5);
    if (zeta != last_zeta) {
      cov = MakeAngleCover(zeta, d);
      last_zeta = zeta;
      largest_cover = std::max(largest_cover, cov.directions.size());
    }
    int worst = m.chain.kappa_max();
    for (const Vec& v : cov.directions) {
      worst = std::min(worst, LtdcMax(SupportIntervals(m.chain, v), ell));
      if (worst == 0) break;
    }
    return static_cast<double>(worst);
  };
  const double margin = 6.0 * std::log((T + 2) / prm.beta) / prm.epsilon;
  SvtResult s = SvtRun(T + 1, query, prm.kappa, prm.epsilon, margin, noise);
  EstimateReport rep;
  Record(rep, s);
  rep.value = s.halt ? Geometric(d_upper, prm.alpha, *s.halt) : 0.0;
  rep.delta_depth = SvtDelta(T, prm.epsilon, prm.beta);
  rep.budget.Charge("dp_width", prm.epsilon);
  rep.terms["T"] = T;
  rep.terms["zeta_min"] = zeta_min;
  rep.terms["largest_cover"] = static_cast<double>(largest_cover);
  return rep;
}

EstimateReport DpMaxProjection(const RegionModel& m, const DPParams& prm, const Vec& v,
                               const Vec& p, double d_upper, NoiseSource& noise) {
  prm.Validate();
  if (!(d_upper > 0)) throw Error(ErrorCode::kInvalidArgument, "diameter upper bound must be > 0");
  const int T = MaxProjectionSteps(prm.alpha, m.grid_exp, d_upper);
  const Vec u = Normalized(v);
  NestedIntervals ni = SupportIntervals(m.chain, u);
  const double x = Dot(p, u);
  auto query = [&](int i) {
    return static_cast<double>(TdcEval(ni, x + Geometric(d_upper, prm.alpha, i)));
  };
  const double margin = 6.0 * std::log((T + 2) / prm.beta) / prm.epsilon;
  SvtResult s = SvtRun(T + 1, query, prm.kappa, prm.epsilon, margin, noise);
  EstimateReport rep;
  Record(rep, s);
  // No crossing: zero headroom past p.
  rep.value = s.halt ? Geometric(d_upper, prm.alpha, *s.halt) : 0.0;
  rep.delta_depth = SvtDelta(T, prm.epsilon, prm.beta);
  rep.budget.Charge("dp_max_projection", prm.epsilon);
  rep.terms["T"] = T;
  return rep;
}

DirectionEstimate DpLargeTdcDirection(const RegionModel& m, const DPParams& prm,
                                      const std::vector<Vec>& directions, const Vec& p,
                                      double lambda, NoiseSource& noise) {
  prm.Validate();
  const size_t T = directions.size();
  auto query = [&](int i) {
    const Vec& v = directions[i];
    return static_cast<double>(TdcEval(SupportIntervals(m.chain, v), Dot(p, v) + lambda));
  };
  const double margin = 6.0 * std::log((T + 1.0) / prm.beta) / prm.epsilon;
  SvtResult s = SvtRun(static_cast<int>(T), query, prm.kappa, prm.epsilon, margin, noise);
  DirectionEstimate out;
  Record(out.report, s);
  if (s.halt) {
    out.index = *s.halt;
    out.direction = directions[*s.halt];
  }
  out.report.value = out.index;
  out.report.delta_depth = LargeTdcDirectionDelta(T, prm.epsilon, prm.beta);
  out.report.budget.Charge("dp_large_tdc_direction", prm.epsilon);
  out.report.terms["cover_size"] = static_cast<double>(T);
  return out;
}

}  // namespace tdp
