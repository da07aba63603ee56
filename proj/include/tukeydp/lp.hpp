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

#ifndef TUKEYDP_LP_HPP_
#define TUKEYDP_LP_HPP_

#include <vector>

#include "tukeydp/common.hpp"

namespace tdp {

// The set {x : <x, normal> <= offset}.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

enum class Sense { kMin, kMax };

struct LpResult {
  double value = 0.0;
  Vec x;
};

// Dense two-phase simplex with Bland's rule over free variables x in R^n
// subject to every constraint. Throws Error(kInfeasible) or
// Error(kUnbounded). `slack` loosens each offset by slack * (1 + |offset|).
LpResult LpSolve(const Vec& objective, const std::vector<Halfspace>& constraints,
                 Sense sense, double slack = 0.0);

// Feasibility only; returns a feasible point or throws kInfeasible.
Vec LpFeasiblePoint(int dim, const std::vector<Halfspace>& constraints,
                    double slack = 0.0);

}  // namespace tdp

#endif  // TUKEYDP_LP_HPP_
