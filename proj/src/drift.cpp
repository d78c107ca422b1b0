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

#include "probekit/drift.hpp"

#include <cmath>

#include "probekit/errors.hpp"
#include "probekit/polytope.hpp"
#include "probekit/relaxation.hpp"

namespace probekit {

namespace {

// Welford accumulators, one per coordinate.
class Moments {
 public:
  explicit Moments(int n)
      : mean_(static_cast<std::size_t>(n), 0.0),
        m2_(static_cast<std::size_t>(n), 0.0) {}

  void add(const std::vector<double>& v) {
    ++count_;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = v[i] - mean_[i];
      mean_[i] += d / static_cast<double>(count_);
      m2_[i] += d * (v[i] - mean_[i]);
    }
  }

  long count() const { return count_; }
  const std::vector<double>& mean() const { return mean_; }
  std::vector<double> standard_error() const {
    std::vector<double> se(mean_.size(), 0.0);
    if (count_ < 2) return se;
    for (std::size_t i = 0; i < se.size(); ++i) {
      se[i] = std::sqrt(m2_[i] / static_cast<double>(count_ - 1) /
                        static_cast<double>(count_));
    }
    return se;
  }

 private:
  long count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

CoordinateDrift finish(const Moments& m, std::vector<double> bound) {
  CoordinateDrift out;
  out.mean = m.mean();
  out.standard_error = m.standard_error();
  out.bound = std::move(bound);
  out.samples = m.count();
  return out;
}

void require_state(const PolicyState& state, long samples) {
  if (samples < 1) throw DomainError("drift: samples must be >= 1");
  if (state.mass <= kTerminationMass) {
    throw DomainError("drift: state has nothing left to probe");
  }
}

}  // namespace

std::optional<std::string> CoordinateDrift::first_violation(
    double sigmas, double slack) const {
  for (std::size_t i = 0; i < mean.size(); ++i) {
    if (mean[i] > bound[i] + sigmas * standard_error[i] + slack) {
      return "coordinate " + std::to_string(i) + ": mean " +
             std::to_string(mean[i]) + " > bound " + std::to_string(bound[i]) +
             " + " + std::to_string(sigmas) + " se (" +
             std::to_string(standard_error[i]) + ")";
    }
  }
  return std::nullopt;
}

CoordinateDrift outer_update_drift(const ProbingInstance& inst,
                                   const PolicyState& state, int j,
                                   long samples, RandomStream& rng) {
  require_state(state, samples);
  if (j < 0 || j >= static_cast<int>(state.outer.size())) {
    throw DomainError("outer_update_drift: no outer matroid " +
                      std::to_string(j));
  }
  const ConvexDecomposition& d = state.outer_support[j];
  const FractionalPoint before = implied_vector(d);
  std::vector<double> bound(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    bound[i] = (1.0 - state.x[i]) * inst.p[i] * state.x[i] / state.mass;
  }
  Moments m(inst.n);
  std::vector<double> delta(static_cast<std::size_t>(inst.n));
  for (long s = 0; s < samples; ++s) {
    const Element e = *select_element(state, rng);
    const int guide = sample_guide(d, e, rng);
    const FractionalPoint after = implied_vector(guided_support_update(
        d, e, guide, state.outer[j].contract(e)));
    for (int i = 0; i < inst.n; ++i) {
      delta[i] = i == e ? 0.0 : inst.p[i] * (before[i] - after[i]);
    }
    m.add(delta);
  }
  return finish(m, std::move(bound));
}

CoordinateDrift inner_update_drift(const ProbingInstance& inst,
                                   const PolicyState& state, int j,
                                   long samples, RandomStream& rng) {
  require_state(state, samples);
  if (j < 0 || j >= static_cast<int>(state.inner.size())) {
    throw DomainError("inner_update_drift: no inner matroid " +
                      std::to_string(j));
  }
  const ConvexDecomposition& d = state.inner_support[j];
  const FractionalPoint before = implied_vector(d);
  std::vector<double> bound(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    const double px = inst.p[i] * state.x[i];
    bound[i] = (1.0 - px) * px / state.mass;
  }
  Moments m(inst.n);
  std::vector<double> delta(static_cast<std::size_t>(inst.n));
  for (long s = 0; s < samples; ++s) {
    const Element e = *select_element(state, rng);
    std::fill(delta.begin(), delta.end(), 0.0);
    if (rng.bernoulli(inst.p[e])) {
      const int guide = sample_guide(d, e, rng);
      // The support is of p . x, so its decrease already is p_i (x_i - x'_i).
      const FractionalPoint after = implied_vector(guided_support_update(
          d, e, guide, state.inner[j].contract(e)));
      for (int i = 0; i < inst.n; ++i) {
        if (i != e) delta[i] = before[i] - after[i];
      }
    }
    m.add(delta);
  }
  return finish(m, std::move(bound));
}

StepDrift step_drift(const ProbingInstance& inst, const PolicyState& state,
                     long samples, RandomStream& rng) {
  require_state(state, samples);
  const int k = inst.k_in() + inst.k_out();
  std::vector<double> bound(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    bound[i] = k * inst.p[i] * state.x[i] / state.mass;
  }
  StepDrift out;
  out.coupling.alpha =
      inst.objective.is_linear() ? 1.0 / k : 1.0 / (k + 1);
  Moments deltas(inst.n);
  Moments paired(3);  // gain, loss, D
  std::vector<double> row(3);
  for (long s = 0; s < samples; ++s) {
    PolicyState copy = state;
    const TraceStep rec = advance(inst, copy, rng);
    deltas.add(rec.delta);
    row[0] = rec.f_after - rec.f_before;
    row[1] = rec.z_before - rec.z_after;
    row[2] = row[0] - out.coupling.alpha * row[1];
    paired.add(row);
  }
  out.delta = finish(deltas, std::move(bound));
  out.coupling.mean_gain = paired.mean()[0];
  out.coupling.mean_loss = paired.mean()[1];
  out.coupling.mean_d = paired.mean()[2];
  out.coupling.standard_error_d = paired.standard_error()[2];
  out.coupling.samples = paired.count();
  return out;
}

}  // namespace probekit
