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

#include "tukeydp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tdp {

double RelativeFatConstant(int dim) {
  return 4.0 * std::pow(dim, 2.5) * std::pow(5.0, dim) * Factorial(dim);
}

double AbsoluteFatConstant(int dim) { return 2.0 * dim * std::pow(5.0, dim) * Factorial(dim); }

FatnessSpec FatnessSpec::Absolute(double c) {
  FatnessSpec f;
  f.kind = Kind::kAbsolute;
  f.c = c;
  f.Validate();
  return f;
}

FatnessSpec FatnessSpec::Relative(double c, double delta) {
  FatnessSpec f;
  f.kind = Kind::kRelative;
  f.c = c;
  f.delta_minus = delta;
  f.Validate();
  return f;
}

FatnessSpec FatnessSpec::RelativeSplit(double c, double delta_plus, double delta_minus) {
  FatnessSpec f;
  f.kind = Kind::kRelativeSplit;
  f.c = c;
  f.delta_plus = delta_plus;
  f.delta_minus = delta_minus;
  f.Validate();
  return f;
}

void FatnessSpec::Validate() const {
  if (!(c >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "fatness constant must be >= 1");
  if (!(delta_plus >= 0) || !(delta_minus >= 0))
    throw Error(ErrorCode::kInvalidArgument, "fatness depth offsets must be >= 0");
}

namespace {

// D(x) for real x is D(ceil(x)); nullptr past the chain.
const Polytope* RegionAtReal(const RegionChain& chain, double x) {
  int k = std::max(1, static_cast<int>(std::ceil(x - 1e-12)));
  return chain.Has(k) ? &chain.At(k) : nullptr;
}

double WidthOf(const Polytope* p) {
  if (!p || p->IsEmpty() || !p->IsFullDim()) return 0.0;
  return WidthExact(*p).value;
}

double DiamOf(const Polytope* p) {
  if (!p || p->IsEmpty()) return 0.0;
  return DiameterExact(*p).value;
}

}  // namespace

bool FatnessSpec::HoldsFor(const RegionChain& chain, int kappa) const {
  const double w = WidthOf(RegionAtReal(chain, kappa + delta_plus));
  if (kind == Kind::kAbsolute) return w >= 1.0 / c - kTol;
  const double diam = DiamOf(RegionAtReal(chain, kappa - delta_minus));
  return w > 0 && w >= diam / c - kTol;
}

bool FatnessImplies(const FatnessSpec& a, const FatnessSpec& b, int dim) {
  if (a.kind == FatnessSpec::Kind::kAbsolute) {
    if (b.kind == FatnessSpec::Kind::kAbsolute) return b.c >= a.c;
    // Every region inside the cube has diameter <= sqrt(dim).
    return b.delta_plus == 0 && b.c >= a.c * std::sqrt(static_cast<double>(dim));
  }
  if (b.kind == FatnessSpec::Kind::kAbsolute) return false;
  return b.c >= a.c && b.delta_plus <= a.delta_plus && b.delta_minus <= a.delta_minus;
}

namespace {

// Parameter range [lo, hi] of c + t w inside the polytope; lo > hi if empty.
std::pair<double, double> RayRange(const Polytope& p, const Vec& c, const Vec& w) {
  double lo = -INFINITY, hi = INFINITY;
  for (const Halfspace& h : p.facets) {
    double nw = Dot(h.normal, w), gap = h.offset - Dot(h.normal, c);
    double tol = kTol * (1.0 + std::abs(h.offset));
    if (std::abs(nw) <= 1e-14) {
      if (gap < -tol) return {1.0, 0.0};
      continue;
    }
    double t = (gap + (nw > 0 ? tol : -tol)) / nw;
    if (nw > 0) hi = std::min(hi, t);
    else lo = std::max(lo, t);
  }
  return {lo, hi};
}

struct SideResult {
  double alpha = INFINITY;
  Vec witness;
};

SideResult InnerSide(const Polytope& hull, const Polytope& inner, const Vec& c) {
  SideResult r;
  if (hull.IsEmpty()) return r;
  double worst = -INFINITY, need_lo = -INFINITY;
  for (const Vec& v : inner.vertices) {
    Vec w = Sub(v, c);
    if (Norm(w) <= kTol) continue;
    auto [lo, hi] = RayRange(hull, c, w);
    if (lo > hi) {
      r.witness = Normalized(w);
      return r;
    }
    need_lo = std::max(need_lo, lo);
    if (1.0 - hi > worst) {
      worst = 1.0 - hi;
      r.witness = Normalized(w);
    }
  }
  worst = std::max(worst, 0.0);
  if (worst > 1.0 || 1.0 - worst < need_lo) return r;
  r.alpha = worst;
  return r;
}

SideResult OuterSide(const Polytope& hull, const Polytope& outer, const Vec& c) {
  SideResult r;
  double worst = 0.0;
  for (const Halfspace& h : outer.facets) {
    double gap = h.offset - Dot(h.normal, c);
    double tol = kTol * (1.0 + std::abs(h.offset));
    for (const Vec& s : hull.vertices) {
      double reach = Dot(h.normal, Sub(s, c));
      double need;
      if (gap <= tol) {
        if (reach <= tol) continue;
        r.witness = Normalized(h.normal);
        return r;
      }
      need = (reach - tol) / gap - 1.0;
      if (need > worst) {
        worst = need;
        r.witness = Normalized(h.normal);
      }
    }
  }
  r.alpha = worst;
  return r;
}

}  // namespace

KernelCertification KernelCertify(const std::vector<Vec>& s, const Polytope& inner,
                                  const Polytope& outer, double alpha) {
  KernelCertification out;
  if (s.empty() || inner.IsEmpty()) return out;
  const int d = inner.dim;
  Polytope hull = HullAny(s, d);
  std::vector<Vec> shifts;
  if (inner.IsFullDim()) shifts.push_back(ChebyshevCenter(inner).center);
  shifts.push_back(VertexCentroid(inner));
  for (const Vec& c : shifts) {
    SideResult in = InnerSide(hull, inner, c);
    if (out.inner_shift.empty() || in.alpha < out.alpha_inner) {
      out.alpha_inner = in.alpha;
      out.inner_shift = c;
      out.inner_witness = in.witness;
    }
    if (!outer.IsEmpty()) {
      SideResult ou = OuterSide(hull, outer, c);
      if (out.outer_shift.empty() || ou.alpha < out.alpha_outer) {
        out.alpha_outer = ou.alpha;
        out.outer_shift = c;
        out.outer_witness = ou.witness;
      }
    }
  }
  out.inner_ok = out.alpha_inner <= alpha + kTol;
  out.outer_ok = out.alpha_outer <= alpha + kTol;
  return out;
}

namespace {

struct Aabb {
  Vec lo, hi;
};

Aabb BoundsOf(const Polytope& p) {
  Aabb b{Vec(p.dim, INFINITY), Vec(p.dim, -INFINITY)};
  for (const Vec& v : p.vertices)
    for (int i = 0; i < p.dim; ++i) {
      b.lo[i] = std::min(b.lo[i], v[i]);
      b.hi[i] = std::max(b.hi[i], v[i]);
    }
  return b;
}

class BoxDepthOracle {
 public:
  explicit BoxDepthOracle(const RegionChain& chain) : chain_(chain) {
    for (const Polytope& p : chain.regions()) bounds_.push_back(BoundsOf(p));
  }

  bool Meets(int k, const Vec& lo, const Vec& hi) const {
    const Polytope& p = chain_.At(k);
    const Aabb& b = bounds_[k - 1];
    const int d = chain_.dim();
    for (int i = 0; i < d; ++i)
      if (b.hi[i] < lo[i] - kTol || b.lo[i] > hi[i] + kTol) return false;
    Vec mid(d);
    for (int i = 0; i < d; ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
    if (p.Contains(mid)) return true;
    for (const Vec& v : p.vertices) {
      bool in = true;
      for (int i = 0; i < d && in; ++i) in = v[i] >= lo[i] - kTol && v[i] <= hi[i] + kTol;
      if (in) return true;
    }
    std::vector<Halfspace> cons = p.facets;
    for (int i = 0; i < d; ++i) {
      Vec e(d, 0.0);
      e[i] = 1.0;
      cons.push_back({e, hi[i]});
      e[i] = -1.0;
      cons.push_back({e, -lo[i]});
    }
    try {
      LpFeasiblePoint(d, cons, kTol);
      return true;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kInfeasible) throw;
      return false;
    }
  }

  int MaxDepth(const Vec& lo, const Vec& hi) const {
    int a = 0, b = chain_.kappa_max();  // Meets(a) holds (a = 0 vacuous)
    if (b == 0 || !Meets(1, lo, hi)) return 0;
    a = 1;
    while (a < b) {
      int mid = (a + b + 1) / 2;
      if (Meets(mid, lo, hi)) a = mid;
      else b = mid - 1;
    }
    return a;
  }

 private:
  const RegionChain& chain_;
  std::vector<Aabb> bounds_;
};

struct Composed {
  double eps0 = 0.0;
  double delta0 = 0.0;
};

// Per-call share of k calls. With delta > 0 the advanced split is used,
// with `log_arg` inside the logarithm; delta = 0 falls back to eps / k.
Composed ShareOf(double k, double eps, double delta, double log_arg_num, double delta_factor) {
  if (delta > 0) return {eps / (2.0 * std::sqrt(k * std::log(log_arg_num / delta))), delta * delta_factor / k};
  return {eps / k, 0.0};
}

void ChargeShare(PrivacyBudget& b, const std::string& name, int k, const Composed& s,
                 const DPParams& prm) {
  if (prm.delta > 0) b.ChargeAdvanced(name, k, s.eps0, s.delta0, prm.epsilon, prm.delta);
  else b.ChargeRepeated(name, k, s.eps0, 0.0);
}

}  // namespace

int MaxDepthInBox(const RegionChain& chain, const Vec& lo, const Vec& hi) {
  return BoxDepthOracle(chain).MaxDepth(lo, hi);
}

KernelResult KernelAbsFat(const RegionModel& m, const DPParams& prm, double c_d, NoiseSource& noise,
                          size_t cell_cap) {
  prm.Validate();
  if (!(c_d >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "c_d must be >= 1");
  const int d = m.dim();
  const double zeta = prm.alpha / (c_d * std::sqrt(static_cast<double>(d)));
  const long side = static_cast<long>(std::ceil(1.0 / zeta - 1e-12));
  const double cells = std::pow(static_cast<double>(side), d);
  if (cells > static_cast<double>(cell_cap))
    throw Error(ErrorCode::kCellBudgetOverflow,
                std::to_string(static_cast<long long>(cells)) + " cells exceed the cap of " +
                    std::to_string(cell_cap) + "; raise alpha or lower c_d");
  const int k = static_cast<int>(cells);
  const double h = 1.0 / static_cast<double>(side);
  const Composed share = ShareOf(k, prm.epsilon, prm.delta, 1.0, 0.0);
  const double beta0 = prm.beta / k;
  const double margin = noise.disabled() ? 0.0 : std::log(1.0 / beta0) / share.eps0;

  KernelResult out;
  out.kappa = prm.kappa;
  out.alpha = prm.alpha;
  out.gamma_kernel = 2.0 * std::log(1.0 / beta0) / share.eps0;
  BoxDepthOracle oracle(m.chain);
  std::vector<long> idx(d, 0);
  Vec lo(d), hi(d), center(d);
  for (int cell = 0; cell < k; ++cell) {
    for (int i = 0; i < d; ++i) {
      lo[i] = idx[i] * h;
      hi[i] = (idx[i] + 1) * h;
      center[i] = (idx[i] + 0.5) * h;
    }
    double depth = oracle.MaxDepth(lo, hi);
    out.report.queries.push_back(depth);
    double noisy = depth + noise.Laplace(1.0 / share.eps0);
    if (noisy >= prm.kappa - margin) out.points.push_back(center);
    for (int i = 0; i < d && ++idx[i] == side; ++i) idx[i] = 0;
  }
  ChargeShare(out.report.budget, "kernel_absfat_cells", k, share, prm);
  out.report.value = static_cast<double>(out.points.size());
  out.report.delta_depth = out.gamma_kernel;
  out.report.terms["zeta"] = zeta;
  out.report.terms["cells"] = k;
  out.report.terms["cell_width"] = h;
  out.report.terms["eps0"] = share.eps0;
  out.report.terms["beta0"] = beta0;
  return out;
}

namespace {

double FatCoverZeta(double alpha, double c_d) {
  return std::min(alpha / (2.0 * std::sqrt(2.0) * c_d), 0.5);
}

}  // namespace

double KernelFatGamma(int dim, int grid_exp, double c_d, const DPParams& prm) {
  const double cover = static_cast<double>(AngleCoverSize(FatCoverZeta(prm.alpha, c_d), dim));
  const double k = dim * (cover + 1.0);
  const Composed share = ShareOf(k, prm.epsilon, prm.delta, 2.0, 0.5);
  const double beta0 = prm.beta / k;
  const int T = MaxProjectionSteps(prm.alpha, grid_exp, std::sqrt(static_cast<double>(dim)));
  const int levels = QcDomain::RotatedGrid(grid_exp, dim).levels;
  // SVT loss of the projection plus d-1 completions.
  return SvtDelta(T, share.eps0, beta0) + (dim - 1) * QcAlpha(levels, share.eps0, beta0);
}

KernelResult KernelFat(const RegionModel& m, const DPParams& prm, double c_d, NoiseSource& noise,
                       double d_upper) {
  prm.Validate();
  if (!(c_d >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "c_d must be >= 1");
  const int d = m.dim();
  const double D = d_upper > 0 ? d_upper : std::sqrt(static_cast<double>(d));
  const double zeta = FatCoverZeta(prm.alpha, c_d);
  const AngleCover cov = MakeAngleCover(zeta, d);
  const int k = d * (static_cast<int>(cov.directions.size()) + 1);
  const Composed share = ShareOf(k, prm.epsilon, prm.delta, 2.0, 0.5);
  const double beta0 = prm.beta / k;

  DPParams sub = prm;
  sub.epsilon = share.eps0;
  sub.delta = 0.0;
  sub.beta = beta0;
  DPParams first = sub;
  first.epsilon = d * share.eps0;
  first.beta = d * beta0;

  KernelResult out;
  out.kappa = prm.kappa;
  out.alpha = prm.alpha;
  out.gamma_kernel = KernelFatGamma(d, m.grid_exp, c_d, prm);
  PointEstimate c = DpPointInRegion(m, first, noise);
  out.base = c.point;
  out.points.push_back(c.point);
  const double alpha_qc = QcAlpha(m.Domain().levels, share.eps0, beta0);
  for (const Vec& v : cov.directions) {
    EstimateReport mp = DpMaxProjection(m, sub, v, c.point, D, noise);
    const Rotation r = RotateToAxis(v);
    RegionModel rm = m.Rotated(r);
    Vec y = DpComplete(rm, {Dot(c.point, v) + mp.value}, share.eps0, noise, nullptr, "");
    out.points.push_back(r.ApplyInverse(y));
    out.report.queries.push_back(mp.value);
  }
  ChargeShare(out.report.budget, "kernel_fat", k, share, prm);
  out.report.value = static_cast<double>(out.points.size());
  out.report.delta_depth = out.gamma_kernel;
  out.report.terms["zeta"] = zeta;
  out.report.terms["cover_size"] = static_cast<double>(cov.directions.size());
  out.report.terms["calls"] = k;
  out.report.terms["eps0"] = share.eps0;
  out.report.terms["delta0"] = share.delta0;
  out.report.terms["beta0"] = beta0;
  out.report.terms["kappa_star"] = prm.kappa + d * alpha_qc;
  out.report.terms["base_depth"] = c.depth;
  return out;
}

SelectionRun RepeatedSelection(int t, double gamma, const std::function<double(int)>& score,
                               NoiseSource& noise) {
  if (t < 1 || !(gamma > 0 && gamma <= 1))
    throw Error(ErrorCode::kInvalidArgument, "selection needs t >= 1 and gamma in (0,1]");
  SelectionRun run;
  auto offer = [&](int i, double s) {
    if (s > run.score) {
      run.score = s;
      run.index = i;
    }
  };
  if (noise.disabled()) {
    for (int i = 1; i <= t; ++i) offer(i, score(i));
    run.iterations = t;
    return run;
  }
  std::uniform_int_distribution<int> pick(1, t);
  // The coin stops the loop with probability 1; the cap only guards against
  // a broken stream.
  const long cap = 1000L * static_cast<long>(std::ceil(1.0 / gamma)) * t;
  do {
    int i = pick(noise.engine());
    offer(i, score(i));
    ++run.iterations;
  } while (noise.Uniform() >= gamma && run.iterations < cap);
  return run;
}

FatnessSelectResult FatnessSelect(const RegionModel& m, const DPParams& prm, NoiseSource& noise,
                                  double c_max) {
  prm.Validate();
  const int d = m.dim();
  const double cap = c_max > 0 ? c_max : RelativeFatConstant(d);
  int t = std::max(1, static_cast<int>(std::ceil(std::log2(cap) - 1e-12)));
  // The width sweep bottoms out at zeta = alpha(1-alpha)/(4 c_i); levels
  // whose cover would not fit are dropped up front.
  while (t > 1 &&
         AngleCoverSize(std::min(prm.alpha * (1 - prm.alpha) / (4.0 * std::ldexp(1.0, t)), 0.5), d) >
             kMaxCoverSize)
    --t;
  const double beta_i = prm.beta / (12.0 * t * std::log(2.0 / prm.beta));
  FatnessSelectResult out;
  out.levels = t;
  std::vector<double> gammas(t + 1, 0.0);
  auto score = [&](int i) {
    const double ci = std::ldexp(1.0, i);
    gammas[i] = KernelFatGamma(d, m.grid_exp, ci, prm);
    DPParams dp = prm;
    dp.delta = 0.0;
    dp.beta = beta_i;
    dp.kappa = noise.disabled() ? prm.kappa
                                : std::max(1, static_cast<int>(std::ceil(prm.kappa - gammas[i])));
    const double D = DpDiameter(m, dp, noise).value;
    if (D <= 0) return 0.0;
    const double dup = D / (1.0 - prm.alpha), b = D / ci;
    const double dw = SvtDelta(WidthSteps(prm.alpha, dup, b), prm.epsilon, beta_i);
    dp.kappa = noise.disabled() ? prm.kappa : static_cast<int>(std::ceil(prm.kappa + dw));
    const double w = DpWidth(m, dp, dup, b, noise).value;
    if (w <= 0) return 0.0;
    return D <= ci * (1 - prm.alpha) / (1 + prm.alpha) * w ? 1.0 / ci : 0.0;
  };
  SelectionRun run = RepeatedSelection(t, 1.0 / (3.0 * t), score, noise);
  out.iterations = run.iterations;
  if (run.index) out.choice = FatnessChoice{*run.index, std::ldexp(1.0, *run.index), gammas[*run.index], run.score};
  out.budget.Charge("fatness_select", 6.0 * prm.epsilon);
  return out;
}

}  // namespace tdp
