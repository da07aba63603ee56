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

// End-to-end kernel release:
//   0  noisy size check (private) and affine rank check (NOT private)
//   1  private choice of kappa
//   2  optional absolute-fatness width probe
//   3  private bounding box and fattening transform (skipped if 2 passed)
//   4  kernel on the transformed data, pulled back
//   5  report
// Every stage runs at the full configured epsilon; totals use basic
// composition.

#ifndef TUKEYDP_PIPELINE_HPP_
#define TUKEYDP_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tukeydp/bbox.hpp"
#include "tukeydp/dp.hpp"
#include "tukeydp/kernel.hpp"
#include "tukeydp/tukey.hpp"

namespace tdp {

struct RunConfig {
  double epsilon = 1.0;
  double delta = 1e-6;
  double alpha = 0.1;
  double beta = 0.05;
  int grid_exp = 8;
  std::optional<uint64_t> seed;  // nullopt: noise disabled
  bool absfat_probe = true;
  bool select_fatness = true;
  double c_d = 0.0;        // > 0 fixes the kernel ratio and skips selection
  int m_override = 0;      // > 0 replaces the prescribed m (still capped)
  size_t cell_cap = kDefaultCellCap;
  bool record_timings = false;  // timings break byte-stable output

  void Validate() const;
};

struct StageRecord {
  std::string name;
  std::string status = "ok";  // ok | skipped
  PrivacyBudget budget;
  std::vector<std::string> notes;
  double millis = 0.0;
};

struct MeasureSet {
  double diameter = 0.0;
  double width = 0.0;
  double volume = 0.0;
  double ball_radius = 0.0;
};

// Exact measures of CH(points); post-processing only.
MeasureSet AppliedMeasures(const std::vector<Vec>& points, int dim);

struct PipelineReport {
  int dim = 0;
  int n = 0;
  RunConfig config;
  bool noise_disabled = true;

  std::vector<StageRecord> stages;
  std::vector<std::string> warnings;

  double noisy_count = 0.0;
  int affine_rank = 0;
  double delta_kernel = 0.0;  // kernel depth loss at the prescribed ratio
  int64_t m_prescribed = 0;
  int m_cap = 0;
  int m = 0;

  int64_t kappa_raw = 0;
  int chosen_kappa = 0;
  int q_max = 0;

  bool absfat = false;  // stage 2 passed
  std::optional<OrientedBox> box;
  std::optional<FatteningTransform> transform;
  double kernel_c = 0.0;
  std::optional<int> fatness_index;
  KernelResult kernel;  // points and base in the data frame
  int outer_kappa = 0;
  MeasureSet measures;

  double total_epsilon() const;
  double total_delta() const;
};

inline constexpr const char* kMFormula = "m = 4*ceil(d^3*grid_exp + d^3*log2(d)) * delta_kernel";

// Throws AbortTooSmall and stage-tagged StageFailure errors; validation
// errors keep their codes.
PipelineReport RunPipeline(const PointSet& p, const RunConfig& cfg);

}  // namespace tdp

#endif  // TUKEYDP_PIPELINE_HPP_
