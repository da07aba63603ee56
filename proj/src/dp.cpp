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

#include <algorithm>
#include <cmath>
#include <limits>

namespace tdp {

namespace {

// FNV-1a, so stream keys do not depend on the standard library's hash.
uint64_t HashTag(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::mt19937_64 MakeEngine(uint64_t seed, uint64_t a, uint64_t b) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
                    static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

void CheckEpsilon(double eps) {
  if (!(eps > 0) || !std::isfinite(eps))
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
}

}  // namespace

NoiseSource::NoiseSource(bool disabled, uint64_t seed)
    : disabled_(disabled), seed_(seed), gen_(MakeEngine(seed, 0, 0)) {}

NoiseSource NoiseSource::Seeded(uint64_t seed) { return NoiseSource(false, seed); }
NoiseSource NoiseSource::Disabled() { return NoiseSource(true, 0); }

NoiseSource NoiseSource::Split(const std::string& tag) {
  NoiseSource child(disabled_, seed_);
  uint64_t n = ++splits_;
  child.seed_ = gen_() ^ HashTag(tag);
  child.gen_ = MakeEngine(seed_, HashTag(tag), n);
  return child;
}

double NoiseSource::Uniform() {
  if (disabled_) return 0.0;
  return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
}

double NoiseSource::Laplace(double scale) {
  if (disabled_) return 0.0;
  if (!(scale >= 0)) throw Error(ErrorCode::kInvalidArgument, "Laplace scale must be >= 0");
  for (;;) {
    double u = std::uniform_real_distribution<double>(-0.5, 0.5)(gen_);
    double t = 1.0 - 2.0 * std::abs(u);
    if (t <= 0.0) continue;
    return (u < 0 ? scale : -scale) * std::log(t);
  }
}

int64_t NoiseSource::DiscreteLaplace(double b) {
  if (disabled_) return 0;
  if (!(b > 0)) throw Error(ErrorCode::kInvalidArgument, "discrete Laplace parameter must be > 0");
  // Difference of two geometric counts has pmf proportional to e^{-|i|/b}.
  double p = -std::expm1(-1.0 / b);
  std::geometric_distribution<int64_t> g(p);
  return g(gen_) - g(gen_);
}

void PrivacyBudget::Charge(const std::string& mechanism, double epsilon, double delta) {
  if (epsilon < 0 || delta < 0 || std::isnan(epsilon) || std::isnan(delta))
    throw Error(ErrorCode::kInvalidArgument, "negative privacy charge for " + mechanism);
  entries_.push_back({mechanism, epsilon, delta, 1, epsilon, delta, false});
}

void PrivacyBudget::ChargeAdvanced(const std::string& mechanism, int k, double eps0,
                                   double delta0, double total_eps, double total_delta) {
  if (k < 1 || eps0 < 0 || delta0 < 0 || total_eps < 0 || total_delta < 0)
    throw Error(ErrorCode::kInvalidArgument, "invalid composed charge for " + mechanism);
  entries_.push_back({mechanism, eps0, delta0, k, total_eps, total_delta, true});
}

void PrivacyBudget::ChargeRepeated(const std::string& mechanism, int k, double eps0,
                                   double delta0) {
  if (k < 1 || eps0 < 0 || delta0 < 0)
    throw Error(ErrorCode::kInvalidArgument, "invalid repeated charge for " + mechanism);
  entries_.push_back({mechanism, eps0, delta0, k, k * eps0, k * delta0, false});
}

void PrivacyBudget::Absorb(const PrivacyBudget& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

double PrivacyBudget::epsilon_spent() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.total_epsilon;
  return s;
}

double PrivacyBudget::delta_spent() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.total_delta;
  return s;
}

int PrivacyBudget::invocations() const {
  int s = 0;
  for (const auto& e : entries_) s += e.count;
  return s;
}

std::pair<double, double> AdvancedComposition(int k, double epsilon, double delta) {
  if (k < 1 || epsilon < 0 || !(delta > 0) || k * delta >= 1.0)
    throw Error(ErrorCode::kInvalidArgument, "advanced composition needs k >= 1, 0 < k*delta < 1");
  return {epsilon * std::sqrt(k * std::log(1.0 / (k * delta))), 2.0 * k * delta};
}

SvtResult SvtRun(int count, const std::function<double(int)>& query, double threshold,
                 double epsilon, double margin, NoiseSource& noise) {
  CheckEpsilon(epsilon);
  SvtResult r;
  const double scale = 3.0 / epsilon;
  if (noise.disabled()) margin = 0.0;
  r.threshold_noise = noise.Laplace(scale);
  const double bar = threshold - margin + r.threshold_noise;
  for (int i = 0; i < count; ++i) {
    double q = query(i);
    double y = q + noise.Laplace(scale);
    r.values.push_back(q);
    r.noisy.push_back(y);
    if (y >= bar) {
      r.halt = i;
      break;
    }
  }
  return r;
}

size_t ExpMechanismSample(const std::vector<double>& weights, NoiseSource& noise) {
  if (weights.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidates");
  for (double w : weights)
    if (!(w >= 0) || !std::isfinite(w))
      throw Error(ErrorCode::kInvalidArgument, "weights must be finite and nonnegative");
  if (noise.disabled())
    return static_cast<size_t>(std::max_element(weights.begin(), weights.end()) - weights.begin());
  std::discrete_distribution<size_t> dist(weights.begin(), weights.end());
  return dist(noise.engine());
}

size_t ExpMechanismSampleLog(const std::vector<double>& log_weights, NoiseSource& noise) {
  if (log_weights.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidates");
  double mx = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> w(log_weights.size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_weights[i] - mx);
  return ExpMechanismSample(w, noise);
}

QcDomain QcDomain::UnitGrid(int grid_exp) {
  return QcDomain{0.0, std::ldexp(1.0, -grid_exp), grid_exp};
}

QcDomain QcDomain::RotatedGrid(int grid_exp, int dim) {
  double r = std::sqrt(static_cast<double>(dim));
  int extra = static_cast<int>(std::ceil(std::log2(2.0 * r) - 1e-12));
  int levels = grid_exp + std::max(extra, 0);
  return QcDomain{-r, 2.0 * r / std::ldexp(1.0, levels), levels};
}

QcResult DpBinarySearchQc(const IntervalOracle& oracle, const QcDomain& dom, double epsilon,
                          NoiseSource& noise) {
  CheckEpsilon(epsilon);
  const double scale = std::max(dom.levels, 1) / epsilon;
  uint64_t first = 0;  // cell index range [first, first + width)
  uint64_t width = uint64_t{1} << dom.levels;
  auto at = [&](uint64_t cell) { return dom.lo + dom.step * static_cast<double>(cell); };
  while (width > 1) {
    uint64_t half = width / 2;
    double left = oracle(at(first), at(first + half)).value + noise.Laplace(scale);
    double right = oracle(at(first + half), at(first + width)).value + noise.Laplace(scale);
    if (right > left) first += half;
    width = half;
  }
  IntervalMax leaf = oracle(at(first), at(first + 1));
  return QcResult{leaf.witness, leaf.value};
}

double QcAlpha(int levels, double epsilon, double beta) {
  CheckEpsilon(epsilon);
  return kQcConstant * (levels + std::log(1.0 / beta)) / epsilon;
}

double QcAlphaWorstCase(int levels, double epsilon, double beta) {
  CheckEpsilon(epsilon);
  double L = std::max(levels, 1);
  return 2.0 * L * L * std::log(2.0 * L / beta) / epsilon;
}

}  // namespace tdp
