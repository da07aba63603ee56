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

#ifndef TUKEYDP_DP_GEOMETRY_HPP_
#define TUKEYDP_DP_GEOMETRY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tukeydp/common.hpp"
#include "tukeydp/dp.hpp"
#include "tukeydp/geometry.hpp"
#include "tukeydp/tdc.hpp"
#include "tukeydp/tukey.hpp"

namespace tdp {

struct DPParams {
  double epsilon = 1.0;
  double delta = 0.0;
  double alpha = 0.1;
  double beta = 0.05;
  int kappa = 1;

  void Validate() const;
};

// A region chain together with the frame it lives in. Coordinates of
// rotated or projected chains stay within sqrt(ambient_dim) of the origin.
struct RegionModel {
  RegionChain chain;
  int grid_exp = 8;
  int ambient_dim = 0;
  bool unit_frame = true;  // axes are the data axes, coordinates in [0,1]

  // kappa_max <= 0 builds every non-empty region.
  static RegionModel FromPoints(const PointSet& p, int kappa_max = 0);

  int dim() const { return chain.dim(); }
  QcDomain Domain() const;
  RegionModel Rotated(const Rotation& r) const;
  RegionModel Projected(const std::vector<Vec>& basis) const;
  // Deepest level containing x.
  int Depth(const Vec& x) const;
};

struct EstimateReport {
  double value = 0.0;
  double delta_depth = 0.0;
  bool halted = false;
  int halt_index = -1;
  PrivacyBudget budget;
  std::vector<double> queries;  // exact query values; debug only
  std::vector<double> noisy;    // noisy comparisons; debug only
  std::map<std::string, double> terms;
};

// 12 ln((T+2)/beta)/eps.
double SvtDelta(int T, double epsilon, double beta);
int DiameterSteps(double alpha, int grid_exp, int dim);
int WidthSteps(double alpha, double d_upper, double b_lower);
int MaxProjectionSteps(double alpha, int grid_exp, double d_upper);
double LargeTdcDirectionDelta(size_t cover_size, double epsilon, double beta);

struct PointEstimate {
  Vec point;
  int depth = 0;  // debug only
  EstimateReport report;
};

// Extends `prefix` coordinate by coordinate, each a private maximization of
// the completion depth at eps_each.
Vec DpComplete(const RegionModel& m, Vec prefix, double eps_each, NoiseSource& noise,
               PrivacyBudget* budget, const std::string& tag);

PointEstimate DpPointInRegion(const RegionModel& m, const DPParams& prm, NoiseSource& noise);

struct PairEstimate {
  Vec x, y;
  int depth_x = 0, depth_y = 0;  // debug only
  bool low_depth = false;
  EstimateReport report;
};
PairEstimate DpPairAtDistance(const RegionModel& m, double ell, const DPParams& prm,
                              NoiseSource& noise);

EstimateReport DpDiameter(const RegionModel& m, const DPParams& prm, NoiseSource& noise);
EstimateReport DpWidth(const RegionModel& m, const DPParams& prm, double d_upper,
                       double b_lower, NoiseSource& noise);
EstimateReport DpMaxProjection(const RegionModel& m, const DPParams& prm, const Vec& v,
                               const Vec& p, double d_upper, NoiseSource& noise);

struct DirectionEstimate {
  std::optional<Vec> direction;
  int index = -1;
  EstimateReport report;
};
DirectionEstimate DpLargeTdcDirection(const RegionModel& m, const DPParams& prm,
                                      const std::vector<Vec>& directions, const Vec& p,
                                      double lambda, NoiseSource& noise);

}  // namespace tdp

#endif  // TUKEYDP_DP_GEOMETRY_HPP_
