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

#ifndef PROBEKIT_ENGINE_HPP_
#define PROBEKIT_ENGINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "probekit/element_set.hpp"
#include "probekit/instance.hpp"
#include "probekit/matroid.hpp"
#include "probekit/polytope.hpp"
#include "probekit/random.hpp"

namespace probekit {

// Sigma at or below this ends a run.
inline constexpr double kTerminationMass = 1e-9;
inline constexpr double kStateTolerance = 1e-7;

// The rounding process between steps. Outer views are contracted by the
// probed set Q, inner views by the taken set S. outer_support[j] decomposes x
// against outer[j]; inner_support[j] decomposes p . x against inner[j].
struct PolicyState {
  FractionalPoint x;
  ElementSet probed;
  ElementSet active;
  std::vector<Matroid> outer;
  std::vector<Matroid> inner;
  std::vector<ConvexDecomposition> outer_support;
  std::vector<ConvexDecomposition> inner_support;
  double potential = 0.0;
  double mass = 0.0;
  int steps = 0;
};

struct TraceStep {
  int t = 0;  // 1-based
  Element element = -1;
  double selection_probability = 0.0;
  bool active = false;
  // Index of the guiding term per matroid, -1 when the update did not fire
  // (inner matroids on a failed probe).
  std::vector<int> outer_guides;
  std::vector<int> inner_guides;
  // p_i (x_i before - x_i after).
  std::vector<double> delta;
  double z_before = 0.0;
  double z_after = 0.0;
  double f_before = 0.0;
  double f_after = 0.0;
};

struct Trace {
  std::vector<TraceStep> steps;
  ElementSet probed;
  ElementSet active;
  double value = 0.0;  // f(S^tau)
  int tau() const { return static_cast<int>(steps.size()); }
};

// Builds the starting state from a relaxation solution. Coordinates below
// the snap tolerance and on loops are zeroed. Throws DomainError if x0 is
// infeasible for the relaxation at kStateTolerance.
PolicyState initial_state(const ProbingInstance& inst,
                          const FractionalPoint& x0);

// Samples e with probability x_e / Sigma; nullopt once Sigma <= the
// termination mass.
std::optional<Element> select_element(const PolicyState& state,
                                      RandomStream& rng);

// One probe in place. Throws InvariantError (with the step record as JSON in
// dump()) if the resulting state breaks a feasibility invariant.
TraceStep advance(const ProbingInstance& inst, PolicyState& state,
                  RandomStream& rng);

// Index of a term of d containing e, drawn with probability weight over the
// total weight on e; -1 if no term contains e. Always consumes one uniform.
int sample_guide(const ConvexDecomposition& d, Element e, RandomStream& rng);

// support_update guided by term `guide`, or by {e} when guide is -1.
ConvexDecomposition guided_support_update(const ConvexDecomposition& d,
                                          Element e, int guide,
                                          const Matroid& contracted);

// Functional form of advance.
PolicyState step(const ProbingInstance& inst, const PolicyState& state,
                 RandomStream& rng, TraceStep* record = nullptr);

Trace run_policy(const ProbingInstance& inst, const FractionalPoint& x0,
                 RandomStream& rng);

// Linear: sum p_e w_e x_e. Otherwise F(1_S + p . x) - F(1_S) exactly.
double potential(const ProbingInstance& inst, const PolicyState& state);

// First broken state invariant at kStateTolerance.
std::optional<std::string> check_state(const ProbingInstance& inst,
                                       const PolicyState& state);

std::string trace_to_json(const Trace& trace, int indent = -1);
std::string step_to_json(const TraceStep& step, int indent = -1);

}  // namespace probekit

#endif  // PROBEKIT_ENGINE_HPP_
