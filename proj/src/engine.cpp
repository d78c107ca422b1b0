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

#include "probekit/engine.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "probekit/errors.hpp"
#include "probekit/objective.hpp"
#include "probekit/relaxation.hpp"

namespace probekit {

namespace {

// Zeroes dust, probed elements, and loops of any current view.
void zero_unusable(const ProbingInstance& inst, const PolicyState& state,
                   FractionalPoint& x) {
  for (int e = 0; e < inst.n; ++e) {
    if (x[e] < kSnapTolerance || state.probed.contains(e)) x[e] = 0.0;
  }
  for (const Matroid& m : state.outer) {
    for (Element e : m.ground()) {
      if (x[e] != 0.0 && !MatroidAccess::independent(m, ElementSet::single(e))) {
        x[e] = 0.0;
      }
    }
  }
  for (const Matroid& m : state.inner) {
    for (Element e : m.ground()) {
      if (x[e] != 0.0 && inst.p[e] > 0.0 &&
          !MatroidAccess::independent(m, ElementSet::single(e))) {
        x[e] = 0.0;
      }
    }
  }
}

void rebuild(const ProbingInstance& inst, PolicyState& state) {
  state.outer_support.clear();
  state.inner_support.clear();
  for (const Matroid& m : state.outer) {
    state.outer_support.push_back(decompose(m, state.x));
  }
  const FractionalPoint px = scale_by_probability(inst, state.x);
  for (const Matroid& m : state.inner) {
    state.inner_support.push_back(decompose(m, px));
  }
  state.mass = 0.0;
  for (double v : state.x) state.mass += v;
  state.potential = potential(inst, state);
}

}  // namespace

int sample_guide(const ConvexDecomposition& d, Element e, RandomStream& rng) {
  double total = 0.0;
  int last = -1;
  for (int a = 0; a < static_cast<int>(d.terms.size()); ++a) {
    if (d.terms[a].set.contains(e)) {
      total += d.terms[a].weight;
      last = a;
    }
  }
  const double u = rng.uniform() * total;
  if (last < 0) return -1;
  double acc = 0.0;
  for (int a = 0; a < static_cast<int>(d.terms.size()); ++a) {
    if (!d.terms[a].set.contains(e)) continue;
    acc += d.terms[a].weight;
    if (u < acc) return a;
  }
  return last;
}

ConvexDecomposition guided_support_update(const ConvexDecomposition& d,
                                          Element e, int guide,
                                          const Matroid& contracted) {
  if (guide >= 0) return support_update(d, e, guide, contracted);
  // No term carries e (its coordinate is below the decomposition's dust
  // level); {e} is still a valid independent guide.
  return support_update_with_guide(d, e, ElementSet::single(e), contracted);
}


double potential(const ProbingInstance& inst, const PolicyState& state) {
  if (const auto* lin =
          std::get_if<LinearDefinition>(&inst.objective.definition())) {
    double total = 0.0;
    for (int e = 0; e < inst.n; ++e) {
      total += inst.p[e] * lin->weights[e] * state.x[e];
    }
    return total;
  }
  std::vector<double> y = scale_by_probability(inst, state.x);
  for (Element e : state.active) y[e] = 1.0;
  return multilinear_exact(inst.objective, y).value -
         inst.objective.value(state.active);
}

PolicyState initial_state(const ProbingInstance& inst,
                          const FractionalPoint& x0) {
  require_valid(inst);
  if (auto v = relaxation_violation(inst, x0, kStateTolerance)) {
    throw DomainError("initial_state: x0 infeasible: " + *v);
  }
  PolicyState state;
  state.outer = inst.outer;
  state.inner = inst.inner;
  state.x = x0;
  for (double& v : state.x) v = std::clamp(v, 0.0, 1.0);
  zero_unusable(inst, state, state.x);
  // Absorb solver round-off between the state and decomposition tolerances.
  if (relaxation_violation(inst, state.x, kSnapTolerance)) {
    for (double& v : state.x) v *= 1.0 - 10 * kStateTolerance;
  }
  rebuild(inst, state);
  return state;
}

std::optional<Element> select_element(const PolicyState& state,
                                      RandomStream& rng) {
  double mass = 0.0;
  Element last = -1;
  for (int e = 0; e < static_cast<int>(state.x.size()); ++e) {
    if (state.x[e] > kTerminationMass) {
      mass += state.x[e];
      last = e;
    }
  }
  if (mass <= kTerminationMass) return std::nullopt;
  const double u = rng.uniform() * mass;
  double acc = 0.0;
  for (int e = 0; e < static_cast<int>(state.x.size()); ++e) {
    if (state.x[e] <= kTerminationMass) continue;
    acc += state.x[e];
    if (u < acc) return e;
  }
  return last;
}

TraceStep advance(const ProbingInstance& inst, PolicyState& state,
                  RandomStream& rng) {
  const std::optional<Element> chosen = select_element(state, rng);
  if (!chosen) throw DomainError("advance: no element left to probe");
  const Element e = *chosen;

  TraceStep rec;
  rec.t = state.steps + 1;
  rec.element = e;
  rec.selection_probability = state.x[e] / state.mass;
  rec.z_before = state.potential;
  rec.f_before = inst.objective.value(state.active);
  rec.active = rng.bernoulli(inst.p[e]);

  const FractionalPoint before = state.x;
  // Each matroid's update implies its own vector; keep the coordinate-wise
  // minimum, which stays in every (downward-closed) contracted polytope.
  FractionalPoint next = state.x;
  next[e] = 0.0;
  for (std::size_t j = 0; j < state.outer.size(); ++j) {
    const int guide = sample_guide(state.outer_support[j], e, rng);
    const Matroid contracted = state.outer[j].contract(e);
    const FractionalPoint implied = implied_vector(
        guided_support_update(state.outer_support[j], e, guide, contracted));
    for (int i = 0; i < inst.n; ++i) next[i] = std::min(next[i], implied[i]);
    state.outer[j] = contracted;
    rec.outer_guides.push_back(guide);
  }
  if (rec.active) {
    state.active.insert(e);
    for (std::size_t j = 0; j < state.inner.size(); ++j) {
      const int guide = sample_guide(state.inner_support[j], e, rng);
      const Matroid contracted = state.inner[j].contract(e);
      const FractionalPoint implied = implied_vector(
          guided_support_update(state.inner_support[j], e, guide, contracted));
      for (int i = 0; i < inst.n; ++i) {
        if (inst.p[i] > 0.0) next[i] = std::min(next[i], implied[i] / inst.p[i]);
      }
      state.inner[j] = contracted;
      rec.inner_guides.push_back(guide);
    }
  } else {
    rec.inner_guides.assign(state.inner.size(), -1);
  }
  state.probed.insert(e);
  zero_unusable(inst, state, next);
  state.x = std::move(next);
  rebuild(inst, state);
  ++state.steps;

  rec.delta.resize(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    rec.delta[i] = inst.p[i] * (before[i] - state.x[i]);
  }
  rec.z_after = state.potential;
  rec.f_after = inst.objective.value(state.active);

  if (auto v = check_state(inst, state)) {
    throw InvariantError("policy state invariant broken after step " +
                             std::to_string(rec.t) + ": " + *v,
                         step_to_json(rec, 2));
  }
  return rec;
}

PolicyState step(const ProbingInstance& inst, const PolicyState& state,
                 RandomStream& rng, TraceStep* record) {
  PolicyState next = state;
  TraceStep rec = advance(inst, next, rng);
  if (record != nullptr) *record = std::move(rec);
  return next;
}

Trace run_policy(const ProbingInstance& inst, const FractionalPoint& x0,
                 RandomStream& rng) {
  PolicyState state = initial_state(inst, x0);
  Trace trace;
  while (state.mass > kTerminationMass) {
    if (trace.tau() >= inst.n) {
      throw InvariantError("run_policy: more probes than elements",
                           trace_to_json(trace, 2));
    }
    try {
      trace.steps.push_back(advance(inst, state, rng));
    } catch (const InvariantError& err) {
      throw InvariantError(err.what(), trace_to_json(trace, 2) + "\n" +
                                           err.dump());
    }
  }
  trace.probed = state.probed;
  trace.active = state.active;
  trace.value = inst.objective.value(state.active);
  return trace;
}

std::optional<std::string> check_state(const ProbingInstance& inst,
                                       const PolicyState& state) {
  if (!state.active.is_subset_of(state.probed)) return "S is not a subset of Q";
  if (!inst.outer_feasible(state.probed)) {
    return "probed set " + state.probed.to_string() + " is outer-infeasible";
  }
  if (!inst.inner_feasible(state.active)) {
    return "taken set " + state.active.to_string() + " is inner-infeasible";
  }
  for (Element e : state.probed) {
    if (state.x[e] != 0.0) {
      return "probed element " + std::to_string(e) + " has x != 0";
    }
  }
  for (std::size_t j = 0; j < state.outer.size(); ++j) {
    if (state.outer[j].contracted() != state.probed) {
      return "outer view " + std::to_string(j) + " not contracted by Q";
    }
    if (auto v = polytope_violation(state.outer[j], state.x, kStateTolerance)) {
      return "outer matroid " + std::to_string(j) + ": " + v->describe();
    }
  }
  const FractionalPoint px = scale_by_probability(inst, state.x);
  for (std::size_t j = 0; j < state.inner.size(); ++j) {
    if (state.inner[j].contracted() != state.active) {
      return "inner view " + std::to_string(j) + " not contracted by S";
    }
    if (auto v = polytope_violation(state.inner[j], px, kStateTolerance)) {
      return "inner matroid " + std::to_string(j) + ": " + v->describe();
    }
  }
  return std::nullopt;
}

namespace {

nlohmann::json step_json(const TraceStep& s) {
  return nlohmann::json{{"t", s.t},
                        {"element", s.element},
                        {"selection_probability", s.selection_probability},
                        {"active", s.active},
                        {"outer_guides", s.outer_guides},
                        {"inner_guides", s.inner_guides},
                        {"delta", s.delta},
                        {"z_before", s.z_before},
                        {"z_after", s.z_after},
                        {"f_before", s.f_before},
                        {"f_after", s.f_after}};
}

}  // namespace

std::string step_to_json(const TraceStep& step, int indent) {
  return step_json(step).dump(indent);
}

std::string trace_to_json(const Trace& trace, int indent) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& s : trace.steps) steps.push_back(step_json(s));
  return nlohmann::json{{"steps", steps},
                        {"probed", trace.probed.to_vector()},
                        {"active", trace.active.to_vector()},
                        {"value", trace.value}}
      .dump(indent);
}

}  // namespace probekit
