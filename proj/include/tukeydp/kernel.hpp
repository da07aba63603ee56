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

// Private kernels of fat Tukey regions: a grid kernel when the region is
// absolutely fat, a direction-cover kernel when its width is comparable to
// the diameter of a shallower region, a private choice of that ratio, and a
// non-private containment check for the output.

#ifndef TUKEYDP_KERNEL_HPP_
#define TUKEYDP_KERNEL_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "tukeydp/dp.hpp"
#include "tukeydp/dp_geometry.hpp"
#include "tukeydp/geometry.hpp"
#include "tukeydp/tukey.hpp"

namespace tdp {

// 4 d^{5/2} 5^d d!, the ratio reached after the bounding-box transform.
double RelativeFatConstant(int dim);
// 2 d 5^d d!, the absolute width bound after the clamped transform.
double AbsoluteFatConstant(int dim);

// Absolute:      width(D(k)) >= 1/c
// Relative:      width(D(k)) >= diam(D(k - delta)) / c
// RelativeSplit: width(D(k + delta_plus)) >= diam(D(k - delta_minus)) / c
struct FatnessSpec {
  enum class Kind { kAbsolute, kRelative, kRelativeSplit };
  Kind kind = Kind::kAbsolute;
  double c = 1.0;
  double delta_plus = 0.0;
  double delta_minus = 0.0;

  static FatnessSpec Absolute(double c);
  static FatnessSpec Relative(double c, double delta);
  static FatnessSpec RelativeSplit(double c, double delta_plus, double delta_minus);
  void Validate() const;

  // Exact check on a chain. Depths below 1 read as D(1); depths past the
  // chain are empty and have width 0.
  bool HoldsFor(const RegionChain& chain, int kappa) const;
};

// True when every region chain satisfying `a` at any depth also satisfies
// `b` there, for regions inside [0,1]^dim.
bool FatnessImplies(const FatnessSpec& a, const FatnessSpec& b, int dim);

struct KernelCertification {
  bool inner_ok = false;
  bool outer_ok = false;
  double alpha_inner = INFINITY;  // best (1-a)(inner-c) ⊆ CH(S)-c
  double alpha_outer = INFINITY;  // best CH(S)-c ⊆ (1+a)(outer-c)
  Vec inner_shift, outer_shift;
  Vec inner_witness, outer_witness;  // direction where the best shift fails
  double snap_distance = 0.0;         // distance of the base point to `inner`

  double alpha_prime() const { return std::max(alpha_inner, alpha_outer); }
};

// Non-private diagnostic. Shifts tried: Chebyshev center and vertex centroid
// of `inner`.
KernelCertification KernelCertify(const std::vector<Vec>& s, const Polytope& inner,
                                  const Polytope& outer, double alpha);

struct KernelResult {
  int kappa = 0;
  std::vector<Vec> points;
  std::optional<Vec> base;
  double alpha = 0.0;
  double gamma_kernel = 0.0;
  EstimateReport report;
  std::optional<KernelCertification> certification;
};

inline constexpr size_t kDefaultCellCap = 1000000;

// Largest k with D(k) meeting the box [lo, hi]; 0 if none.
int MaxDepthInBox(const RegionChain& chain, const Vec& lo, const Vec& hi);

// Grid kernel on [0,1]^d for a c-absolutely fat region.
KernelResult KernelAbsFat(const RegionModel& m, const DPParams& prm, double c_d, NoiseSource& noise,
                          size_t cell_cap = kDefaultCellCap);

// Depth loss of the direction-cover kernel for a given ratio c.
double KernelFatGamma(int dim, int grid_exp, double c_d, const DPParams& prm);

// Direction-cover kernel; `d_upper` bounds the diameter of D(k) and
// defaults to sqrt(d).
KernelResult KernelFat(const RegionModel& m, const DPParams& prm, double c_d, NoiseSource& noise,
                       double d_upper = 0.0);

struct SelectionRun {
  std::optional<int> index;  // 1-based level with the largest score
  double score = 0.0;
  int iterations = 0;
};

// Repeated random trials stopped by a gamma-biased coin. A disabled stream
// scores every level once instead.
SelectionRun RepeatedSelection(int t, double gamma, const std::function<double(int)>& score,
                               NoiseSource& noise);

struct FatnessChoice {
  int index = 0;
  double c = 0.0;
  double gamma = 0.0;
  double score = 0.0;
};

struct FatnessSelectResult {
  std::optional<FatnessChoice> choice;
  int levels = 0;
  int iterations = 0;
  PrivacyBudget budget;
};

// c_max <= 0 uses RelativeFatConstant(d).
FatnessSelectResult FatnessSelect(const RegionModel& m, const DPParams& prm, NoiseSource& noise,
                                  double c_max = 0.0);

}  // namespace tdp

#endif  // TUKEYDP_KERNEL_HPP_
