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

// Oriented bounding boxes built one axis at a time: pick a long segment,
// record the extent along it, project everything onto the orthogonal
// complement and repeat. The private variant finds both segment ends as
// deep points.

#ifndef TUKEYDP_BBOX_HPP_
#define TUKEYDP_BBOX_HPP_

#include <utility>
#include <vector>

#include "tukeydp/dp.hpp"
#include "tukeydp/dp_geometry.hpp"
#include "tukeydp/geometry.hpp"

namespace tdp {

struct OrientedBox {
  std::vector<Vec> axes;                            // orthonormal
  std::vector<std::pair<double, double>> intervals;  // extent along each axis
  std::vector<bool> degenerate;                     // axis chosen or sized by a fallback

  int dim() const { return static_cast<int>(axes.size()); }
  double Volume() const;
  bool Contains(const Vec& x, double tol = 1e-9) const;
  std::vector<Vec> Corners() const;
};

// gamma >= 1; the segment is the exact diameter pair at every level.
OrientedBox BboxNonPrivate(const std::vector<Vec>& points, double gamma = 1.0);
OrientedBox BboxNonPrivate(const Polytope& p, double gamma = 1.0);

struct BoxEstimate {
  OrientedBox box;
  EstimateReport report;
};

// Disabled streams read every shifted depth as kappa itself.
BoxEstimate BboxPrivate(const RegionModel& m, const DPParams& prm, NoiseSource& noise);

// Box to [0,1]^d by rotation, per-axis scaling and shift.
struct FatteningTransform {
  int dim = 0;
  std::vector<Vec> axes;
  Vec lo, scale;  // y_j = (<x, a_j> - lo_j) / scale_j
  bool clamped = false;

  Vec Forward(const Vec& x) const;
  Vec Inverse(const Vec& y) const;
  // Image of a polytope, intersected with the cube when clamped.
  Polytope Apply(const Polytope& p) const;
  double Determinant() const;  // |det| of the forward linear part
};

FatteningTransform MakeFatteningTransform(const OrientedBox& box, bool clamped);

// Chain of the image regions, in the unit frame of the cube. Regions that
// vanish after clamping end the chain.
RegionModel TransformModel(const RegionModel& m, const FatteningTransform& t);

}  // namespace tdp

#endif  // TUKEYDP_BBOX_HPP_
