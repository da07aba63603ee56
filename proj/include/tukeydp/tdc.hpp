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

// Depth completion: with a coordinate prefix y fixed, TDC(x) is the best
// depth of any point whose first |y|+1 coordinates are (y, x). Each level k
// contributes the interval [a_k, b_k] of coordinate |y|+1 over the slice of
// D(k); the intervals nest, which makes every query logarithmic.

#ifndef TUKEYDP_TDC_HPP_
#define TUKEYDP_TDC_HPP_

#include <vector>

#include "tukeydp/common.hpp"
#include "tukeydp/tukey.hpp"

namespace tdp {

struct NestedIntervals {
  Vec prefix;
  std::vector<double> a;  // a[k-1] for level k, non-decreasing
  std::vector<double> b;  // b[k-1] for level k, non-increasing

  int levels() const { return static_cast<int>(a.size()); }
};

// Slices of every region at the prefix; stops at the first empty slice.
NestedIntervals TdcPrecompute(const RegionChain& chain, const Vec& prefix);
// Same as TdcPrecompute on the chain rotated so that u becomes the first
// axis, with an empty prefix, computed by batch vertex projection.
NestedIntervals SupportIntervals(const RegionChain& chain, const Vec& u);

struct EvalResult {
  int value = 0;
  double witness = 0.0;  // a point of the query attaining the value
};

int TdcEval(const NestedIntervals& ni, double x);
// max k with [p,q] ∩ [a_k,b_k] non-empty, by binary search on the flanks.
EvalResult TdcEvalInterval(const NestedIntervals& ni, double p, double q);

// min(TDC(x), TDC(x + ell))
int LtdcEval(const NestedIntervals& ni, double ell, double x);
// Maximum of the above over [p,q] via the merged change-point list.
EvalResult LtdcEvalInterval(const NestedIntervals& ni, double ell, double p, double q);
// Maximum over the whole line: the deepest level whose interval is >= ell long.
int LtdcMax(const NestedIntervals& ni, double ell);

}  // namespace tdp

#endif  // TUKEYDP_TDC_HPP_
