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

#ifndef PROBEKIT_RELAXATION_HPP_
#define PROBEKIT_RELAXATION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "probekit/instance.hpp"
#include "probekit/lp.hpp"
#include "probekit/polytope.hpp"

namespace probekit {

// Rank constraints are enumerated over all subsets of the universe.
inline constexpr int kLpMaxGround = 16;
inline constexpr int kDefaultGreedySteps = 200;
inline constexpr double kRelaxationTolerance = 1e-7;

enum class RelaxationMode { kLp, kContinuousGreedy };

const char* to_string(RelaxationMode mode);

struct RelaxedSolution {
  FractionalPoint x0;
  // Linear: sum p w x0. Continuous greedy: F(p . x0).
  double objective_value = 0.0;
  RelaxationMode mode = RelaxationMode::kLp;
  int steps = 0;
  long lp_pivots = 0;
  // F(p . y) after each continuous-greedy step.
  std::vector<double> trajectory;
};

// The polytope { x in [0,1]^E : p.x in P(inner_j), x in P(outer_j) } as one
// rank row per nonempty subset per matroid, with objective sum p_e w_e x_e
// when the instance objective is linear (zero otherwise).
LinearProgram build_probing_lp(const ProbingInstance& inst);

RelaxedSolution solve_linear_relaxation(const ProbingInstance& inst);

// Discretized continuous greedy on F(p . y) over the same polytope.
RelaxedSolution continuous_greedy(const ProbingInstance& inst,
                                  int steps = kDefaultGreedySteps);

struct FPlusOptimum {
  double value = 0.0;
  FractionalPoint x;
};

// max over the relaxation polytope of f+(p . x), solved as one LP over x and
// the distribution weights alpha_A. Limited to kFPlusMaxGround elements.
FPlusOptimum max_f_plus_over_relaxation(const ProbingInstance& inst);

// First violated relaxation constraint at tol, naming the matroid.
std::optional<std::string> relaxation_violation(const ProbingInstance& inst,
                                                const FractionalPoint& x,
                                                double tol);

// p . x
FractionalPoint scale_by_probability(const ProbingInstance& inst,
                                     const FractionalPoint& x);

}  // namespace probekit

#endif  // PROBEKIT_RELAXATION_HPP_
