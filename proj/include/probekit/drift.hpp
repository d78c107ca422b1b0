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

#ifndef PROBEKIT_DRIFT_HPP_
#define PROBEKIT_DRIFT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "probekit/engine.hpp"
#include "probekit/instance.hpp"
#include "probekit/random.hpp"

namespace probekit {

// Per-coordinate Monte Carlo estimate of E[delta_i] from one fixed state,
// with the analytic upper bound it is compared against.
struct CoordinateDrift {
  std::vector<double> mean;
  std::vector<double> standard_error;
  std::vector<double> bound;
  long samples = 0;

  // First coordinate with mean > bound + sigmas * se + slack.
  std::optional<std::string> first_violation(double sigmas,
                                             double slack = 1e-12) const;
};

// A single update for outer matroid j in isolation: choose e with
// probability x_e / Sigma, a guide term, apply the exchange-guided update.
// delta_i = p_i (x_i - x'_i) for i != e; the probed coordinate itself is
// not part of the update. Bound: (1 - x_i) p_i x_i / Sigma.
CoordinateDrift outer_update_drift(const ProbingInstance& inst,
                                   const PolicyState& state, int j,
                                   long samples, RandomStream& rng);

// Same for inner matroid j; the update fires only when the probe succeeds.
// Bound: (1 - p_i x_i) p_i x_i / Sigma.
CoordinateDrift inner_update_drift(const ProbingInstance& inst,
                                   const PolicyState& state, int j,
                                   long samples, RandomStream& rng);

struct CouplingEstimate {
  double alpha = 0.0;
  double mean_gain = 0.0;
  double mean_loss = 0.0;
  // D = gain - alpha * loss, paired per sample.
  double mean_d = 0.0;
  double standard_error_d = 0.0;
  long samples = 0;

  bool holds(double sigmas, double slack = 1e-12) const {
    return mean_d >= -sigmas * standard_error_d - slack;
  }
};

struct StepDrift {
  // delta_i over full engine steps. Bound: (k_out + k_in) p_i x_i / Sigma.
  CoordinateDrift delta;
  CouplingEstimate coupling;
};

// Full steps from copies of `state`. alpha is 1 / (k_in + k_out) for linear
// objectives and 1 / (k_in + k_out + 1) otherwise.
StepDrift step_drift(const ProbingInstance& inst, const PolicyState& state,
                     long samples, RandomStream& rng);

}  // namespace probekit

#endif  // PROBEKIT_DRIFT_HPP_
