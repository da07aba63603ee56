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

// Point ingestion (CSV or JSON array of arrays) and synthetic generators.

#ifndef TUKEYDP_IO_HPP_
#define TUKEYDP_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "tukeydp/tukey.hpp"

namespace tdp {

// dim <= 0 infers the column count from the first data row. Values must lie
// in [0,1] and on the 2^-grid_exp grid (snapped within 1e-12).
PointSet ParsePointsCsv(const std::string& text, int dim, int grid_exp);
PointSet ParsePointsJson(const std::string& text, int dim, int grid_exp);
// Format chosen by extension (.json) or a leading '['.
PointSet LoadPoints(const std::string& path, int dim, int grid_exp);

std::string PointsToCsv(const PointSet& p);
std::string PointsToJson(const PointSet& p);
void WriteTextFile(const std::string& path, const std::string& text);
std::string ReadTextFile(const std::string& path);

enum class SyntheticFamily { kUniform, kGaussianClipped, kRing, kVolatileDepth };

SyntheticFamily ParseSyntheticFamily(const std::string& name);
const char* SyntheticFamilyName(SyntheticFamily f);

struct SyntheticSet {
  PointSet points;
  // Volatile family: removing points[*pivot] collapses the width of
  // D(pivot_kappa).
  std::optional<size_t> pivot;
  int pivot_kappa = 0;
};

SyntheticSet GenerateSynthetic(SyntheticFamily family, int n, int dim, uint64_t seed,
                               int grid_exp = 8);

}  // namespace tdp

#endif  // TUKEYDP_IO_HPP_
