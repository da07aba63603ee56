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

#ifndef TUKEYDP_TUKEY_HPP_
#define TUKEYDP_TUKEY_HPP_

#include <optional>
#include <vector>

#include "tukeydp/common.hpp"
#include "tukeydp/geometry.hpp"

namespace tdp {

// Grid-aligned points in [0,1]^d. `cols` mirrors `points` coordinate-major
// for the batch kernels.
struct PointSet {
  int dim = 0;
  int grid_exp = 0;
  std::vector<Vec> points;
  std::vector<double> cols;

  size_t size() const { return points.size(); }
  // Validates range, grid alignment (1e-12) and n >= d+1 unless relaxed.
  static PointSet Make(std::vector<Vec> pts, int grid_exp, bool validate = true);
  PointSet With(const Vec& extra) const;
};

// min over unit u of |{p : <p,u> <= <x,u>}|, exact for d <= 3.
int TukeyDepth(const Vec& x, const std::vector<Vec>& points);
inline int TukeyDepth(const Vec& x, const PointSet& p) { return TukeyDepth(x, p.points); }

// Nested chain D(1) ⊇ D(2) ⊇ ... of the non-empty regions, index k-1 holds
// D(k). Immutable once built; rotated and projected copies share the type.
class RegionChain {
 public:
  RegionChain() = default;
  RegionChain(int dim, std::vector<Polytope> regions);

  int dim() const { return dim_; }
  int kappa_max() const { return static_cast<int>(regions_.size()); }
  bool Has(int kappa) const { return kappa >= 1 && kappa <= kappa_max(); }
  const Polytope& At(int kappa) const { return regions_.at(kappa - 1); }
  const std::vector<Polytope>& regions() const { return regions_; }

  // Coordinate-major vertex block of region k (for the batch kernels).
  const std::vector<double>& VertexCols(int kappa) const { return vcols_.at(kappa - 1); }

  RegionChain Rotated(const Rotation& r) const;
  // Every region projected onto the orthonormal rows of `basis`.
  RegionChain Projected(const std::vector<Vec>& basis) const;
  // Regions 1..k only.
  RegionChain Truncated(int k) const;

 private:
  int dim_ = 0;
  std::vector<Polytope> regions_;
  std::vector<std::vector<double>> vcols_;
};

// Intersection of all closed halfspaces holding >= n-k+1 points; nullopt
// when empty. A lower-dimensional result has affine_dim < dim.
std::optional<Polytope> TukeyRegion(const PointSet& p, int kappa);
// Regions 1..min(kappa_max, k*) where k* is the deepest non-empty level.
RegionChain BuildRegionChain(const PointSet& p, int kappa_max);

}  // namespace tdp

#endif  // TUKEYDP_TUKEY_HPP_
