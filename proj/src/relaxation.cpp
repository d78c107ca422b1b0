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

#include "probekit/relaxation.hpp"

#include <algorithm>
#include <cmath>

#include "probekit/errors.hpp"
#include "probekit/objective.hpp"

namespace probekit {

const char* to_string(RelaxationMode mode) {
  return mode == RelaxationMode::kLp ? "lp" : "continuous_greedy";
}

FractionalPoint scale_by_probability(const ProbingInstance& inst,
                                     const FractionalPoint& x) {
  FractionalPoint out(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) out[e] = inst.p[e] * x[e];
  return out;
}

namespace {

// Appends the relaxation rows over variables 0..n-1 of `lp`.
void add_relaxation_rows(const ProbingInstance& inst, LinearProgram& lp) {
  const int n = inst.n;
  const std::uint32_t count = std::uint32_t{1} << n;
  for (const Matroid& m : inst.outer) {
    for (std::uint32_t mask = 1; mask < count; ++mask) {
      const ElementSet a(mask);
      std::vector<std::pair<int, double>> row;
      for (Element e : a) row.emplace_back(e, 1.0);
      lp.add_row(std::move(row), RowSense::kLessEqual, m.rank(a));
    }
  }
  for (const Matroid& m : inst.inner) {
    for (std::uint32_t mask = 1; mask < count; ++mask) {
      const ElementSet a(mask);
      std::vector<std::pair<int, double>> row;
      for (Element e : a) {
        if (inst.p[e] != 0.0) row.emplace_back(e, inst.p[e]);
      }
      lp.add_row(std::move(row), RowSense::kLessEqual, m.rank(a));
    }
  }
}

void check_lp_size(const ProbingInstance& inst, int limit, const char* op) {
  require_valid(inst);
  if (inst.n > limit) {
    throw CapabilityError(std::string(op) + ": universe of size " +
                          std::to_string(inst.n) +
                          " exceeds constraint-enumeration limit " +
                          std::to_string(limit));
  }
}

}  // namespace

LinearProgram build_probing_lp(const ProbingInstance& inst) {
  check_lp_size(inst, kLpMaxGround, "build_probing_lp");
  LinearProgram lp(inst.n);
  if (const auto* lin =
          std::get_if<LinearDefinition>(&inst.objective.definition())) {
    for (int e = 0; e < inst.n; ++e) {
      lp.objective[e] = inst.p[e] * lin->weights[e];
    }
  }
  add_relaxation_rows(inst, lp);
  return lp;
}

RelaxedSolution solve_linear_relaxation(const ProbingInstance& inst) {
  if (!inst.objective.is_linear()) {
    throw DomainError("solve_linear_relaxation: objective is not linear");
  }
  const LinearProgram lp = build_probing_lp(inst);
  const LpSolution solution = solve_lp(lp);
  RelaxedSolution out;
  out.x0 = solution.x;
  out.objective_value = solution.value;
  out.mode = RelaxationMode::kLp;
  out.steps = 1;
  out.lp_pivots = solution.pivots;
  return out;
}

RelaxedSolution continuous_greedy(const ProbingInstance& inst, int steps) {
  if (steps < 1) throw DomainError("continuous_greedy: steps must be >= 1");
  LinearProgram lp = build_probing_lp(inst);
  if (inst.n > kExactMaxGround) {
    throw CapabilityError("continuous_greedy: exact multilinear mode needs " +
                          std::to_string(kExactMaxGround) +
                          " or fewer elements");
  }
  const int n = inst.n;
  RelaxedSolution out;
  out.mode = RelaxationMode::kContinuousGreedy;
  out.steps = steps;
  out.x0.assign(static_cast<std::size_t>(n), 0.0);
  const double dt = 1.0 / steps;
  for (int t = 0; t < steps; ++t) {
    const std::vector<double> grad =
        gradient(inst.objective, scale_by_probability(inst, out.x0));
    // Rate of change of F(p . y) along 1_e.
    for (int e = 0; e < n; ++e) lp.objective[e] = inst.p[e] * grad[e];
    const LpSolution direction = solve_lp(lp);
    out.lp_pivots += direction.pivots;
    for (int e = 0; e < n; ++e) {
      out.x0[e] = std::min(1.0, out.x0[e] + dt * direction.x[e]);
    }
    out.trajectory.push_back(
        multilinear_exact(inst.objective, scale_by_probability(inst, out.x0))
            .value);
  }
  out.objective_value = out.trajectory.back();
  return out;
}

FPlusOptimum max_f_plus_over_relaxation(const ProbingInstance& inst) {
  check_lp_size(inst, kFPlusMaxGround, "max_f_plus_over_relaxation");
  const int n = inst.n;
  const int subsets = (1 << n) - 1;  // alpha for each nonempty subset
  LinearProgram lp(n + subsets);
  add_relaxation_rows(inst, lp);
  std::vector<std::pair<int, double>> total;
  for (int j = 0; j < subsets; ++j) {
    const ElementSet a(static_cast<std::uint32_t>(j + 1));
    lp.objective[n + j] = inst.objective.value(a);
    total.emplace_back(n + j, 1.0);
  }
  lp.add_row(std::move(total), RowSense::kLessEqual, 1.0);
  // Marginals of the distribution are dominated by p . x.
  for (int e = 0; e < n; ++e) {
    std::vector<std::pair<int, double>> row;
    for (int j = 0; j < subsets; ++j) {
      if (((j + 1) >> e) & 1) row.emplace_back(n + j, 1.0);
    }
    row.emplace_back(e, -inst.p[e]);
    lp.add_row(std::move(row), RowSense::kLessEqual, 0.0);
  }
  const LpSolution solution = solve_lp(lp);
  FPlusOptimum out;
  out.value = solution.value;
  out.x.assign(solution.x.begin(), solution.x.begin() + n);
  return out;
}

std::optional<std::string> relaxation_violation(const ProbingInstance& inst,
                                                const FractionalPoint& x,
                                                double tol) {
  if (static_cast<int>(x.size()) != inst.n) {
    return "point has dimension " + std::to_string(x.size()) +
           ", expected " + std::to_string(inst.n);
  }
  for (int e = 0; e < inst.n; ++e) {
    if (!(x[e] >= -tol && x[e] <= 1.0 + tol)) {
      return "coordinate " + std::to_string(e) + " = " +
             std::to_string(x[e]) + " outside [0,1]";
    }
  }
  for (std::size_t j = 0; j < inst.outer.size(); ++j) {
    if (auto v = polytope_violation(inst.outer[j], x, tol)) {
      return "outer matroid " + std::to_string(j) + ": " + v->describe();
    }
  }
  const FractionalPoint px = scale_by_probability(inst, x);
  for (std::size_t j = 0; j < inst.inner.size(); ++j) {
    if (auto v = polytope_violation(inst.inner[j], px, tol)) {
      return "inner matroid " + std::to_string(j) + " (on p.x): " +
             v->describe();
    }
  }
  return std::nullopt;
}

}  // namespace probekit
