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

#ifndef TUKEYDP_TESTS_TEST_UTIL_HPP_
#define TUKEYDP_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <random>
#include <vector>

#include "tukeydp/common.hpp"
#include "tukeydp/geometry.hpp"
#include "tukeydp/tukey.hpp"

namespace tdp::testing {

inline std::vector<Vec> RandomGridPoints(int n, int d, int grid_exp, uint64_t seed,
                                         double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 g(seed);
  const int cells = 1 << grid_exp;
  std::uniform_int_distribution<int> pick(static_cast<int>(std::ceil(lo * cells)),
                                          static_cast<int>(std::floor(hi * cells)));
  std::vector<Vec> pts(n, Vec(d));
  for (auto& p : pts)
    for (auto& x : p) x = static_cast<double>(pick(g)) / cells;
  return pts;
}

inline PointSet RandomPointSet(int n, int d, uint64_t seed, int grid_exp = 8) {
  return PointSet::Make(RandomGridPoints(n, d, grid_exp, seed), grid_exp);
}

inline Vec RandomUnit(std::mt19937_64& g, int d) {
  std::normal_distribution<double> nd;
  Vec u(d);
  for (auto& x : u) x = nd(g);
  return Normalized(u);
}

inline PointSet Square() {
  return PointSet::Make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 8);
}

// Roughly uniform directions on the sphere (1-degree steps in the plane).
inline std::vector<Vec> SweepDirections(int d, double step_rad = M_PI / 180.0) {
  std::vector<Vec> out;
  if (d == 2) {
    for (double t = 0; t < 2 * M_PI; t += step_rad) out.push_back({std::cos(t), std::sin(t)});
  } else {
    for (double phi = step_rad / 2; phi < M_PI; phi += step_rad) {
      int nt = std::max(1, static_cast<int>(std::ceil(2 * M_PI * std::sin(phi) / step_rad)));
      for (int k = 0; k < nt; ++k) {
        double t = 2 * M_PI * k / nt;
        out.push_back({std::sin(phi) * std::cos(t), std::sin(phi) * std::sin(t), std::cos(phi)});
      }
    }
  }
  return out;
}

}  // namespace tdp::testing

#endif  // TUKEYDP_TESTS_TEST_UTIL_HPP_
