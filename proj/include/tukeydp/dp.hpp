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

#ifndef TUKEYDP_DP_HPP_
#define TUKEYDP_DP_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tukeydp/common.hpp"

namespace tdp {

// A seedable, splittable noise stream. Disabled streams return zero for
// every draw; mechanisms also consult disabled() to drop their margins and
// to turn sampling into argmax.
class NoiseSource {
 public:
  static NoiseSource Seeded(uint64_t seed);
  static NoiseSource Disabled();

  bool disabled() const { return disabled_; }
  uint64_t seed() const { return seed_; }

  // Child stream keyed by (seed, tag, number of earlier splits).
  NoiseSource Split(const std::string& tag);

  double Laplace(double scale);
  int64_t DiscreteLaplace(double b);
  double Uniform();  // [0,1); 0 when disabled
  std::mt19937_64& engine() { return gen_; }

 private:
  NoiseSource(bool disabled, uint64_t seed);

  bool disabled_ = true;
  uint64_t seed_ = 0;
  uint64_t splits_ = 0;
  std::mt19937_64 gen_;
};

struct BudgetEntry {
  std::string mechanism;
  double epsilon = 0.0;  // per invocation
  double delta = 0.0;
  int count = 1;
  // Declared aggregate; equals count * (epsilon, delta) under basic
  // composition, or the advanced-composition total otherwise.
  double total_epsilon = 0.0;
  double total_delta = 0.0;
  bool advanced = false;
};

class PrivacyBudget {
 public:
  void Charge(const std::string& mechanism, double epsilon, double delta = 0.0);
  // k invocations at (eps0, delta0) that together are (total_eps, total_delta)-DP.
  void ChargeAdvanced(const std::string& mechanism, int k, double eps0, double delta0,
                      double total_eps, double total_delta);
  // k invocations at (eps0, delta0) under basic composition.
  void ChargeRepeated(const std::string& mechanism, int k, double eps0, double delta0 = 0.0);
  void Absorb(const PrivacyBudget& other);

  double epsilon_spent() const;
  double delta_spent() const;
  int invocations() const;
  const std::vector<BudgetEntry>& entries() const { return entries_; }

 private:
  std::vector<BudgetEntry> entries_;
};

// (eps * sqrt(k ln(1/(k delta))), 2 k delta).
std::pair<double, double> AdvancedComposition(int k, double epsilon, double delta);

struct SvtResult {
  std::optional<int> halt;
  double threshold_noise = 0.0;
  std::vector<double> values;  // evaluated queries, in order
  std::vector<double> noisy;   // values + Y_i
};

// Threshold noise X ~ Lap(3/eps) once, Y_i ~ Lap(3/eps) per query; halts at
// the first i with Y_i + q_i >= threshold - margin + X.
SvtResult SvtRun(int count, const std::function<double(int)>& query, double threshold,
                 double epsilon, double margin, NoiseSource& noise);

size_t ExpMechanismSample(const std::vector<double>& weights, NoiseSource& noise);
// Same selection with weights exp(log_weights), for weights that overflow.
size_t ExpMechanismSampleLog(const std::vector<double>& log_weights, NoiseSource& noise);

// 2^levels equal cells starting at lo.
struct QcDomain {
  double lo = 0.0;
  double step = 1.0;
  int levels = 0;

  double hi() const { return lo + step * static_cast<double>(uint64_t{1} << levels); }
  static QcDomain UnitGrid(int grid_exp);
  // Covers [-sqrt(d), sqrt(d)] with cells no wider than 2^-grid_exp.
  static QcDomain RotatedGrid(int grid_exp, int dim);
};

struct IntervalMax {
  double value = 0.0;
  double witness = 0.0;
};
using IntervalOracle = std::function<IntervalMax(double lo, double hi)>;

struct QcResult {
  double x = 0.0;
  double value = 0.0;  // oracle value at x; debug only
};

// Binary search: per level, noisy maxima of both halves with Lap(levels/eps)
// each, recurse into the larger (ties left); the last cell yields its
// maximizing point.
QcResult DpBinarySearchQc(const IntervalOracle& oracle, const QcDomain& dom, double epsilon,
                          NoiseSource& noise);

// Set from a coverage sweep over depth-staircase objectives (README).
inline constexpr double kQcConstant = 4.0;
// c * (levels + ln(1/beta)) / eps.
double QcAlpha(int levels, double epsilon, double beta);
// Guaranteed bound of the recursion: 2 L^2 ln(2L/beta) / eps.
double QcAlphaWorstCase(int levels, double epsilon, double beta);

}  // namespace tdp

#endif  // TUKEYDP_DP_HPP_
