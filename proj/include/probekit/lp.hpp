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

#ifndef PROBEKIT_LP_HPP_
#define PROBEKIT_LP_HPP_

#include <utility>
#include <vector>

namespace probekit {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LinearRow {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

// maximize objective . x  subject to rows, 0 <= x <= upper.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearRow> rows;
  std::vector<double> upper;  // finite, one per variable

  explicit LinearProgram(int n = 0)
      : num_vars(n), objective(n, 0.0), upper(n, 1.0) {}

  void add_row(std::vector<std::pair<int, double>> terms, RowSense sense,
               double rhs) {
    rows.push_back({std::move(terms), sense, rhs});
  }
};

struct LpOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  long max_pivots = 1000000;
};

struct LpSolution {
  std::vector<double> x;
  double value = 0.0;
  // Multipliers of the inequality system actually solved: one per row
  // (equalities contribute the difference of their two halves), followed by
  // one per upper bound. Together they certify value by weak duality.
  std::vector<double> row_duals;
  std::vector<double> bound_duals;
  long pivots = 0;
};

// Dense two-phase simplex on the compact (nonbasic-column) tableau with
// Bland's rule. Throws InvariantError if the program is infeasible or the
// pivot limit is exceeded; box bounds rule out unboundedness.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

// Maximum violation of rows and bounds at x (0 when feasible).
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace probekit

#endif  // PROBEKIT_LP_HPP_
