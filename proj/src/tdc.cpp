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

#include "tukeydp/tdc.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "tukeydp/lp.hpp"
#include "tukeydp/simd.hpp"

namespace tdp {

namespace {

struct Range {
  double lo, hi;
};

// Coordinate i = |prefix| of the slice {x : x_j = prefix_j, j < i}.
std::optional<Range> SliceRange(const Polytope& p, const Vec& prefix) {
  const int d = p.dim;
  const int i = static_cast<int>(prefix.size());
  if (p.IsEmpty()) return std::nullopt;
  if (i == 0) {
    Range r{INFINITY, -INFINITY};
    for (const Vec& v : p.vertices) {
      r.lo = std::min(r.lo, v[0]);
      r.hi = std::max(r.hi, v[0]);
    }
    return r;
  }
  if (i == d - 1) {
    // A line: every facet bounds the last coordinate directly. Exact bounds
    // are used when they are consistent; the widened ones only decide
    // whether a thin (or lower-dimensional) region still meets the line.
    Range r{-INFINITY, INFINITY}, w{-INFINITY, INFINITY};
    for (const Halfspace& h : p.facets) {
      double rest = h.offset;
      for (int j = 0; j < i; ++j) rest -= h.normal[j] * prefix[j];
      double a = h.normal[i];
      double tol = kTol * (1.0 + std::abs(h.offset));
      if (std::abs(a) <= 1e-14) {
        if (rest < -tol) return std::nullopt;
        continue;
      }
      if (a > 0) {
        r.hi = std::min(r.hi, rest / a);
        w.hi = std::min(w.hi, (rest + tol) / a);
      } else {
        r.lo = std::max(r.lo, rest / a);
        w.lo = std::max(w.lo, (rest + tol) / a);
      }
    }
    if (r.lo <= r.hi) return r;
    if (w.lo > w.hi) return std::nullopt;
    double m = std::clamp(0.5 * (r.lo + r.hi), w.lo, w.hi);
    return Range{m, m};
  }
  // General slice: LP in the remaining d - i coordinates.
  std::vector<Halfspace> cons;
  for (const Halfspace& h : p.facets) {
    Halfspace c;
    c.offset = h.offset;
    for (int j = 0; j < i; ++j) c.offset -= h.normal[j] * prefix[j];
    c.normal.assign(h.normal.begin() + i, h.normal.end());
    cons.push_back(c);
  }
  Vec obj(d - i, 0.0);
  obj[0] = 1.0;
  try {
    double lo = LpSolve(obj, cons, Sense::kMin, kTol).value;
    double hi = LpSolve(obj, cons, Sense::kMax, kTol).value;
    return Range{lo, hi};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInfeasible) return std::nullopt;
    throw;
  }
}

void Push(NestedIntervals& ni, double lo, double hi) {
  if (!ni.a.empty()) {
    // Nesting holds exactly; clamp away floating-point drift.
    lo = std::max(lo, ni.a.back());
    hi = std::min(hi, ni.b.back());
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
  }
  ni.a.push_back(lo);
  ni.b.push_back(hi);
}

bool Meets(const NestedIntervals& ni, int k, double p, double q) {
  return p <= ni.b[k - 1] + kTol && q >= ni.a[k - 1] - kTol;
}

// Middle of [p,q] ∩ [a_k,b_k], which keeps witnesses off region boundaries.
double Witness(const NestedIntervals& ni, int k, double p, double q) {
  double lo = std::max(p, ni.a[k - 1]), hi = std::min(q, ni.b[k - 1]);
  if (lo > hi) return std::clamp(0.5 * (lo + hi), p, q);  // met only within kTol
  double m = 0.5 * (lo + hi);
  if (!std::isfinite(m)) m = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
  return std::clamp(m, p, q);
}

}  // namespace

NestedIntervals TdcPrecompute(const RegionChain& chain, const Vec& prefix) {
  if (static_cast<int>(prefix.size()) > chain.dim() - 1)
    throw Error(ErrorCode::kInvalidArgument, "prefix longer than d-1");
  NestedIntervals ni;
  ni.prefix = prefix;
  for (int k = 1; k <= chain.kappa_max(); ++k) {
    auto r = SliceRange(chain.At(k), prefix);
    if (!r) break;
    Push(ni, r->lo, r->hi);
  }
  return ni;
}

NestedIntervals SupportIntervals(const RegionChain& chain, const Vec& u) {
  NestedIntervals ni;
  for (int k = 1; k <= chain.kappa_max(); ++k) {
    const auto& cols = chain.VertexCols(k);
    size_t nv = chain.At(k).vertices.size();
    if (nv == 0) break;
    auto [lo, hi] = simd::ProjectRange(cols.data(), nv, chain.dim(), u.data());
    Push(ni, lo, hi);
  }
  return ni;
}

EvalResult TdcEvalInterval(const NestedIntervals& ni, double p, double q) {
  EvalResult r;
  const int K = ni.levels();
  if (K == 0 || p > q) return r;
  if (Meets(ni, K, p, q)) {
    r.value = K;
  } else if (q < ni.a[K - 1]) {
    // Left flank: levels meeting [p,q] are those with a_k <= q.
    int lo = 0, hi = K;  // invariant: level lo meets (0 is a sentinel)
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (ni.a[mid - 1] <= q + kTol) lo = mid; else hi = mid - 1;
    }
    r.value = lo;
  } else {
    int lo = 0, hi = K;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (ni.b[mid - 1] >= p - kTol) lo = mid; else hi = mid - 1;
    }
    r.value = lo;
  }
  r.witness = r.value > 0 ? Witness(ni, r.value, p, q) : std::clamp(0.5 * (p + q), p, q);
  return r;
}

int TdcEval(const NestedIntervals& ni, double x) { return TdcEvalInterval(ni, x, x).value; }

int LtdcEval(const NestedIntervals& ni, double ell, double x) {
  return std::min(TdcEval(ni, x), TdcEval(ni, x + ell));
}

EvalResult LtdcEvalInterval(const NestedIntervals& ni, double ell, double p, double q) {
  EvalResult best;
  best.witness = std::isfinite(p) ? p : (std::isfinite(q) ? q : 0.0);
  if (p > q) return best;
  // Both factors are step functions; their breakpoints (and those of the
  // shifted copy) split the line into pieces of constant min.
  std::vector<double> cp;
  cp.reserve(4 * ni.a.size() + 2);
  for (int k = 0; k < ni.levels(); ++k) {
    for (double x : {ni.a[k], ni.b[k], ni.a[k] - ell, ni.b[k] - ell})
      if (x >= p && x <= q) cp.push_back(x);
  }
  if (std::isfinite(p)) cp.push_back(p);
  if (std::isfinite(q)) cp.push_back(q);
  std::sort(cp.begin(), cp.end());
  cp.erase(std::unique(cp.begin(), cp.end()), cp.end());
  auto probe = [&](double x) {
    int v = LtdcEval(ni, ell, x);
    if (v > best.value) {
      best.value = v;
      best.witness = x;
    }
  };
  if (cp.empty()) {
    probe(0.0);
    return best;
  }
  for (size_t i = 0; i < cp.size(); ++i) {
    probe(cp[i]);
    if (i + 1 < cp.size()) probe(0.5 * (cp[i] + cp[i + 1]));
  }
  if (!std::isfinite(p)) probe(cp.front() - 1.0);
  if (!std::isfinite(q)) probe(cp.back() + 1.0);
  return best;
}

int LtdcMax(const NestedIntervals& ni, double ell) {
  // Interval lengths are non-increasing in k.
  int lo = 0, hi = ni.levels();
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (ni.b[mid - 1] - ni.a[mid - 1] >= ell - kTol) lo = mid; else hi = mid - 1;
  }
  return lo;
}

}  // namespace tdp
