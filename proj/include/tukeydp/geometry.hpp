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

#ifndef TUKEYDP_GEOMETRY_HPP_
#define TUKEYDP_GEOMETRY_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "tukeydp/common.hpp"
#include "tukeydp/lp.hpp"

namespace tdp {

// Bounded convex polytope carried in both representations. Lower-dimensional
// polytopes keep an H-rep made of equality pairs plus in-flat facets, so LP
// and slicing work on them unchanged. In d=2 full-dimensional polygons list
// vertices counter-clockwise.
struct Polytope {
  int dim = 0;
  int affine_dim = -1;  // -1 when empty
  std::vector<Vec> vertices;
  std::vector<Halfspace> facets;

  bool IsEmpty() const { return vertices.empty(); }
  bool IsFullDim() const { return affine_dim == dim && dim > 0; }
  bool Contains(const Vec& x, double tol = kTol) const;
};

// Hull of any finite set, possibly lower-dimensional or empty.
Polytope HullAny(const std::vector<Vec>& points, int dim);
// Full-dimensional hull; throws kDegenerateInput on affine rank < d.
Polytope ConvexHull(const std::vector<Vec>& points);
// std::nullopt means Empty; throws kUnbounded.
std::optional<Polytope> HalfspaceIntersection(
    const std::vector<Halfspace>& constraints, int dim);
// P intersected with one halfspace (normal need not be unit).
Polytope Clip(const Polytope& p, const Halfspace& h);

double Volume(const Polytope& p);

struct DiameterResult {
  double value = 0.0;
  Vec p, q;
};
DiameterResult DiameterExact(const Polytope& p);

struct WidthResult {
  double value = 0.0;
  Vec direction;
};
WidthResult WidthExact(const Polytope& p);

// (min, max) of <x,u> over the vertices.
std::pair<double, double> SupportRange(const Polytope& p, const Vec& u);
double DirectionalSpan(const Polytope& p, const Vec& u);
Vec VertexCentroid(const Polytope& p);

// Orthogonal d x d map stored row-major.
struct Rotation {
  int dim = 0;
  std::vector<double> m;

  Vec Apply(const Vec& x) const;
  Vec ApplyInverse(const Vec& y) const;
  Vec Row(int i) const;
};
// Proper rotation R with (R x)_1 = <x, v>, so R v = e_1.
Rotation RotateToAxis(const Vec& v);
Polytope Transform(const Polytope& p, const Rotation& r);
Polytope Translate(const Polytope& p, const Vec& shift);
// Homothety about c with factor s > 0.
Polytope ScaleAbout(const Polytope& p, const Vec& c, double s);

// Coordinates of every vertex in the orthonormal basis rows, then re-hulled.
Polytope ProjectToBasis(const Polytope& p, const std::vector<Vec>& basis);

struct AngleCover {
  double zeta = 0.0;
  int dim = 0;
  std::vector<Vec> directions;
};
inline constexpr size_t kMaxCoverSize = 400000;
size_t AngleCoverSize(double zeta, int dim);
AngleCover MakeAngleCover(double zeta, int dim);

struct Ball {
  Vec center;
  double radius = 0.0;
};
Ball ChebyshevCenter(const Polytope& p);
// Smallest enclosing ball of a point set (Welzl, d <= 3).
Ball MinEnclosingBall(const std::vector<Vec>& points);

}  // namespace tdp

#endif  // TUKEYDP_GEOMETRY_HPP_
