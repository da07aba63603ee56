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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tdp {

bool VolumeRatioHolds(double outer, double inner) {
  if (inner <= 0.0) return outer <= 0.0;
  return 2.0 * outer >= inner;
}

namespace {

double VolumeAt(const std::vector<double>& v, int k) {
  return k >= 1 && k <= static_cast<int>(v.size()) ? v[k - 1] : 0.0;
}

}  // namespace

int QQuery(const std::vector<double>& volumes, int kappa, int m) {
  if (m < 1 || kappa < 1 || kappa > m)
    throw Error(ErrorCode::kInvalidArgument, "kappa must lie in [1, m]");
  // The window widens monotonically, so feasible radii form a prefix.
  int best = 0;
  const int top = std::min(kappa - 1, m - kappa);
  for (int i = 1; i <= top; ++i) {
    if (!VolumeRatioHolds(VolumeAt(volumes, kappa + i), VolumeAt(volumes, kappa - i))) break;
    best = i;
  }
  return best;
}

KappaQueryTable KappaQueryTable::FromVolumes(std::vector<double> volumes, int m) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  for (size_t i = 0; i < volumes.size(); ++i) {
    if (!(volumes[i] >= 0)) throw Error(ErrorCode::kInvalidArgument, "volumes must be >= 0");
    if (i > 0 && volumes[i] > volumes[i - 1] * (1 + 1e-12) + 1e-15)
      throw Error(ErrorCode::kInvalidArgument, "volumes must be non-increasing");
  }
  KappaQueryTable t;
  t.m = m;
  volumes.resize(m, 0.0);
  t.volumes = std::move(volumes);
  t.q.resize(m);
  for (int k = 1; k <= m; ++k) t.q[k - 1] = QQuery(t.volumes, k, m);
  return t;
}

KappaQueryTable KappaQueryTable::FromChain(const RegionChain& chain, int m) {
  std::vector<double> v;
  for (int k = 1; k <= std::min(m, chain.kappa_max()); ++k) v.push_back(Volume(chain.At(k)));
  return FromVolumes(std::move(v), m);
}

KappaQueryTable KappaQueryTable::FromPoints(const PointSet& p, int m) {
  return FromChain(BuildRegionChain(p, m), m);
}

int KappaQueryTable::Max() const { return *std::max_element(q.begin(), q.end()); }

int KappaQueryTable::ArgMax() const {
  return static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin()) + 1;
}

KappaSelection ShiftedExpMechanism(const KappaQueryTable& table, double epsilon,
                                   NoiseSource& noise) {
  if (!(epsilon > 0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  if (table.m < 16.0 / epsilon)
    throw Error(ErrorCode::kMTooSmall, "m = " + std::to_string(table.m) + " is below 16/epsilon = " +
                                           std::to_string(16.0 / epsilon));
  std::vector<double> logw(table.m);
  for (int k = 0; k < table.m; ++k) logw[k] = epsilon / 8.0 * table.q[k];
  KappaSelection s;
  s.sampled = static_cast<int>(ExpMechanismSampleLog(logw, noise)) + 1;
  s.shift = noise.DiscreteLaplace(8.0 / epsilon);
  s.output = s.sampled + s.shift;
  s.out_of_range = s.output < 1 || s.output > table.m;
  s.clamped = static_cast<int>(std::clamp<int64_t>(s.output, 1, table.m));
  s.q_max = table.Max();
  s.budget.Charge("shifted_exp_mechanism", epsilon);
  return s;
}

double DiscreteLaplacePmf(int64_t k, double b) {
  if (!(b > 0)) throw Error(ErrorCode::kInvalidArgument, "discrete Laplace parameter must be > 0");
  return std::tanh(0.5 / b) * std::exp(-std::abs(static_cast<double>(k)) / b);
}

std::vector<double> ShiftedExpPmf(const std::vector<int>& q, double epsilon, int64_t lo,
                                  int64_t hi) {
  if (q.empty() || hi < lo) throw Error(ErrorCode::kInvalidArgument, "empty pmf request");
  const int m = static_cast<int>(q.size());
  const int qmax = *std::max_element(q.begin(), q.end());
  std::vector<double> w(m);
  double total = 0.0;
  for (int k = 0; k < m; ++k) total += w[k] = std::exp(epsilon / 8.0 * (q[k] - qmax));
  const double b = 8.0 / epsilon;
  std::vector<double> pmf(hi - lo + 1, 0.0);
  for (int64_t j = lo; j <= hi; ++j) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += w[k] * DiscreteLaplacePmf(j - (k + 1), b);
    pmf[j - lo] = s / total;
  }
  return pmf;
}

int64_t ShiftedExpWindow(double epsilon, double tail) {
  if (!(tail > 0 && tail < 1)) throw Error(ErrorCode::kInvalidArgument, "tail must lie in (0,1)");
  // Two-sided mass beyond W is 2 r^{W+1} / (1 + r) < 2 e^{-W/b}.
  return static_cast<int64_t>(std::ceil(8.0 / epsilon * std::log(2.0 / tail)));
}

QAudit QSensitivityAudit(const PointSet& p, const Vec& x, int m) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "audit needs m >= 2");
  KappaQueryTable a = KappaQueryTable::FromPoints(p, m);
  KappaQueryTable b = KappaQueryTable::FromPoints(p.With(x), m);
  QAudit r;
  r.q_max = a.Max();
  for (int k = 1; k < m; ++k) {
    int diff = std::abs(a.At(k) - b.At(k + 1));
    if (k == 1 || diff > r.max_diff) {
      r.max_diff = diff;
      r.worst_kappa = k;
    }
  }
  return r;
}

std::optional<int> FindGoodPair(const std::vector<double>& volumes, int delta, int m) {
  if (delta < 1) throw Error(ErrorCode::kInvalidArgument, "delta must be >= 1");
  for (int k = delta + 1; k <= m; ++k) {
    double v = VolumeAt(volumes, k);
    if (v > 0 && 2.0 * v >= VolumeAt(volumes, k - delta)) return k;
  }
  return std::nullopt;
}

int64_t PrescribedM(int dim, int grid_exp, double delta_kernel) {
  if (dim < 1 || grid_exp < 1 || !(delta_kernel >= 0))
    throw Error(ErrorCode::kInvalidArgument, "invalid prescribed-m inputs");
  const double d3 = std::pow(dim, 3);
  const double m = 4.0 * std::ceil(d3 * grid_exp + d3 * std::log2(dim)) * delta_kernel;
  const double cap = static_cast<double>(std::numeric_limits<int64_t>::max() / 2);
  return static_cast<int64_t>(std::min(std::ceil(m), cap));
}

}  // namespace tdp
