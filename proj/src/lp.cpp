// Copyright 2026 The probe-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "probekit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "probekit/errors.hpp"

namespace probekit {

namespace {

// Compact tableau over A x <= b, x >= 0. Row i reads
//   x[basic[i]] = T[i][n+1] - sum_j T[i][j] x[nonbasic[j]],
// row m is the objective (negated costs) and row m+1 the phase-one
// objective. Column n belongs to the single artificial variable (id -1);
// slack of row i has id n+i.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& a,
          const std::vector<double>& b, const std::vector<double>& c,
          const LpOptions& options)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        eps_(options.pivot_tolerance),
        max_pivots_(options.max_pivots),
        nonbasic_(n_ + 1),
        basic_(m_),
        t_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) t_[i][j] = a[i][j];
      basic_[i] = n_ + i;
      t_[i][n_] = -1.0;
      t_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      t_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    t_[m_ + 1][n_] = 1.0;
  }

  // Returns false if infeasible.
  bool solve() {
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (t_[i][n_ + 1] < t_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && t_[r][n_ + 1] < -eps_) {
      pivot(r, n_);
      run(2);
      if (t_[m_ + 1][n_ + 1] < -eps_) return false;
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j < n_ + 1; ++j) {
          if (nonbasic_[j] == -1) continue;
          if (s < 0 || std::abs(t_[i][j]) > std::abs(t_[i][s])) s = j;
        }
        // A zero row is redundant; the artificial stays basic at level 0.
        if (s >= 0 && std::abs(t_[i][s]) > eps_) pivot(i, s);
      }
    }
    run(1);
    return true;
  }

  double value() const { return t_[m_][n_ + 1]; }
  long pivots() const { return pivots_; }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && basic_[i] < n_) x[basic_[i]] = t_[i][n_ + 1];
    }
    return x;
  }

  // Dual multiplier of each inequality row.
  std::vector<double> dual() const {
    std::vector<double> y(m_, 0.0);
    for (int j = 0; j < n_ + 1; ++j) {
      if (nonbasic_[j] >= n_) y[nonbasic_[j] - n_] = t_[m_][j];
    }
    return y;
  }

 private:
  void pivot(int r, int s) {
    if (++pivots_ > max_pivots_) {
      throw InvariantError("solve_lp: pivot limit exceeded");
    }
    const double inv = 1.0 / t_[r][s];
    const std::vector<double>& row_r = t_[r];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(t_[i][s]) <= eps_ * 1e-3) continue;
      std::vector<double>& row = t_[i];
      const double factor = row[s] * inv;
      for (int j = 0; j < n_ + 2; ++j) row[j] -= row_r[j] * factor;
      row[s] = row_r[s] * factor;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) t_[r][j] *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) t_[i][s] *= -inv;
    }
    t_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // phase 1 optimizes row m (skipping the artificial), phase 2 row m+1.
  void run(int phase) {
    const int obj = m_ + phase - 1;
    while (true) {
      // Bland: lowest variable id with negative reduced cost enters.
      int s = -1;
      for (int j = 0; j < n_ + 1; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (t_[obj][j] < -eps_ && (s < 0 || nonbasic_[j] < nonbasic_[s])) {
          s = j;
        }
      }
      if (s < 0) return;
      int r = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][s] <= eps_) continue;
        const double ratio = t_[i][n_ + 1] / t_[i][s];
        if (r < 0 || ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && basic_[i] < basic_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r < 0) throw InvariantError("solve_lp: program is unbounded");
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  double eps_;
  long max_pivots_;
  long pivots_ = 0;
  std::vector<int> nonbasic_;
  std::vector<int> basic_;
  std::vector<std::vector<double>> t_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  const int n = lp.num_vars;
  if (static_cast<int>(lp.objective.size()) != n ||
      static_cast<int>(lp.upper.size()) != n) {
    throw DomainError("solve_lp: objective/bounds dimension mismatch");
  }
  for (double u : lp.upper) {
    if (!std::isfinite(u) || u < 0.0) {
      throw DomainError("solve_lp: upper bounds must be finite and >= 0");
    }
  }

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  // (row index, sign) for each generated inequality.
  std::vector<std::pair<int, double>> origin;
  auto emit = [&](const LinearRow& row, double sign, int index) {
    std::vector<double> dense(n, 0.0);
    for (const auto& [var, coef] : row.terms) {
      if (var < 0 || var >= n) {
        throw DomainError("solve_lp: row references variable " +
                          std::to_string(var));
      }
      dense[var] += sign * coef;
    }
    a.push_back(std::move(dense));
    b.push_back(sign * row.rhs);
    origin.emplace_back(index, sign);
  };
  for (int k = 0; k < static_cast<int>(lp.rows.size()); ++k) {
    const LinearRow& row = lp.rows[k];
    if (row.sense != RowSense::kGreaterEqual) emit(row, 1.0, k);
    if (row.sense != RowSense::kLessEqual) emit(row, -1.0, k);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> dense(n, 0.0);
    dense[j] = 1.0;
    a.push_back(std::move(dense));
    b.push_back(lp.upper[j]);
    origin.emplace_back(-1 - j, 1.0);
  }

  Tableau tableau(a, b, lp.objective, options);
  if (!tableau.solve()) throw InvariantError("solve_lp: program is infeasible");

  LpSolution out;
  out.x = tableau.primal();
  for (int j = 0; j < n; ++j) {
    out.x[j] = std::clamp(out.x[j], 0.0, lp.upper[j]);
  }
  out.value = 0.0;
  for (int j = 0; j < n; ++j) out.value += lp.objective[j] * out.x[j];
  out.pivots = tableau.pivots();

  const std::vector<double> y = tableau.dual();
  out.row_duals.assign(lp.rows.size(), 0.0);
  out.bound_duals.assign(n, 0.0);
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const auto [index, sign] = origin[i];
    if (index >= 0) {
      out.row_duals[index] += sign * y[i];
    } else {
      out.bound_duals[-1 - index] += y[i];
    }
  }
  if (max_violation(lp, out.x) > options.feasibility_tolerance) {
    throw InvariantError("solve_lp: returned point violates constraints");
  }
  return out;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars; ++j) {
    worst = std::max({worst, -x[j], x[j] - lp.upper[j]});
  }
  for (const LinearRow& row : lp.rows) {
    double lhs = 0.0;
    for (const auto& [var, coef] : row.terms) lhs += coef * x[var];
    const double over = lhs - row.rhs;
    switch (row.sense) {
      case RowSense::kLessEqual:
        worst = std::max(worst, over);
        break;
      case RowSense::kGreaterEqual:
        worst = std::max(worst, -over);
        break;
      case RowSense::kEqual:
        worst = std::max(worst, std::abs(over));
        break;
    }
  }
  return worst;
}

}  // namespace probekit
