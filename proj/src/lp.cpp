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

#include "tukeydp/lp.hpp"

#include <algorithm>
#include <cmath>

namespace tdp {

namespace {

constexpr double kPivotEps = 1e-11;

class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(int i, int j) { return t_[i * (cols_ + 1) + j]; }
  double& rhs(int i) { return at(i, cols_); }
  double& z(int j) { return at(m_, j); }
  int rows() const { return m_; }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  void Pivot(int r, int c) {
    double p = at(r, c);
    for (int j = 0; j <= cols_; ++j) at(r, j) /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
    }
    basis_[r] = c;
  }

  void SetObjective(const Vec& cost) {
    for (int j = 0; j <= cols_; ++j) z(j) = j < cols_ ? -cost[j] : 0.0;
    for (int i = 0; i < m_; ++i) {
      double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) z(j) += cb * at(i, j);
    }
  }

  // Maximizes the installed objective; banned columns never enter.
  // Returns false when unbounded.
  bool Optimize(const std::vector<char>& banned) {
    for (int iter = 0; iter < 200000; ++iter) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!banned[j] && z(j) < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        double a = at(i, enter);
        if (a <= kPivotEps) continue;
        double ratio = rhs(i) / a;
        if (leave < 0 || ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
    throw Error(ErrorCode::kInvalidArgument, "simplex iteration cap exceeded");
  }

  void DropRow(int r) {
    for (int i = r; i < m_; ++i)
      for (int j = 0; j <= cols_; ++j) at(i, j) = at(i + 1, j);
    basis_.erase(basis_.begin() + r);
    --m_;
    t_.resize((m_ + 1) * (cols_ + 1));
  }

 private:
  int m_;
  int cols_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

LpResult Solve(const Vec& c, const std::vector<Halfspace>& cons, double slack,
               bool feasibility_only) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(cons.size());
  std::vector<int> art_row;
  Vec b(m);
  double bscale = 1.0;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(cons[i].normal.size()) != n)
      throw Error(ErrorCode::kInvalidArgument, "constraint dimension mismatch");
    b[i] = cons[i].offset + slack * (1.0 + std::abs(cons[i].offset));
    bscale = std::max(bscale, std::abs(b[i]));
    if (b[i] < 0) art_row.push_back(i);
  }
  const int na = static_cast<int>(art_row.size());
  const int cols = 2 * n + m + na;
  Tableau t(m, cols);
  int a = 0;
  for (int i = 0; i < m; ++i) {
    double sgn = b[i] < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      t.at(i, j) = sgn * cons[i].normal[j];
      t.at(i, n + j) = -sgn * cons[i].normal[j];
    }
    t.at(i, 2 * n + i) = sgn;
    t.rhs(i) = sgn * b[i];
    if (b[i] < 0) {
      t.at(i, 2 * n + m + a) = 1.0;
      t.basis()[i] = 2 * n + m + a;
      ++a;
    } else {
      t.basis()[i] = 2 * n + i;
    }
  }
  std::vector<char> banned(cols, 0);
  if (na > 0) {
    Vec cost(cols, 0.0);
    for (int k = 0; k < na; ++k) cost[2 * n + m + k] = -1.0;
    t.SetObjective(cost);
    t.Optimize(banned);
    if (t.z(cols) < -1e-9 * bscale)
      throw Error(ErrorCode::kInfeasible, "linear program is infeasible");
    for (int k = 0; k < na; ++k) banned[2 * n + m + k] = 1;
    for (int i = 0; i < t.rows();) {
      if (t.basis()[i] < 2 * n + m) {
        ++i;
        continue;
      }
      int piv = -1;
      for (int j = 0; j < 2 * n + m; ++j) {
        if (std::abs(t.at(i, j)) > 1e-9) {
          piv = j;
          break;
        }
      }
      if (piv >= 0) {
        t.Pivot(i, piv);
        ++i;
      } else {
        t.DropRow(i);
      }
    }
  }
  LpResult res;
  if (!feasibility_only) {
    Vec cost(cols, 0.0);
    for (int j = 0; j < n; ++j) {
      cost[j] = c[j];
      cost[n + j] = -c[j];
    }
    t.SetObjective(cost);
    if (!t.Optimize(banned))
      throw Error(ErrorCode::kUnbounded, "linear program is unbounded");
  }
  Vec val(cols, 0.0);
  for (int i = 0; i < t.rows(); ++i) val[t.basis()[i]] = t.rhs(i);
  res.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) res.x[j] = val[j] - val[n + j];
  res.value = Dot(res.x, c);
  return res;
}

}  // namespace

LpResult LpSolve(const Vec& objective, const std::vector<Halfspace>& constraints,
                 Sense sense, double slack) {
  if (sense == Sense::kMax) return Solve(objective, constraints, slack, false);
  LpResult r = Solve(Scale(objective, -1.0), constraints, slack, false);
  r.value = -r.value;
  return r;
}

Vec LpFeasiblePoint(int dim, const std::vector<Halfspace>& constraints,
                    double slack) {
  return Solve(Vec(dim, 0.0), constraints, slack, true).x;
}

}  // namespace tdp
