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

#ifndef PROBEKIT_EXPERIMENT_HPP_
#define PROBEKIT_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probekit/instance.hpp"
#include "probekit/relaxation.hpp"
#include "probekit/serialization.hpp"

namespace probekit {

// linear: LP relaxation, target 1/(k_in + k_out).
// submodular: continuous greedy, target (1 - 1/e)/(k_in + k_out + 1).
enum class RunMode { kLinear, kSubmodular };

const char* to_string(RunMode mode);
RunMode parse_run_mode(const std::string& name);
RunMode default_mode(const ProbingInstance& inst);
double target_ratio(RunMode mode, int k_in, int k_out);

struct ExperimentConfig {
  std::string instance;  // path or generator description, echoed for replay
  long trials = 1000;
  std::uint64_t seed = 1;
  RunMode mode = RunMode::kLinear;
  int cg_steps = kDefaultGreedySteps;
  // Worker threads; 0 means hardware concurrency. Not part of the report:
  // results do not depend on it.
  int jobs = 0;
};

// Averages over all trials that reached step t.
struct StepStatistics {
  int t = 0;
  long runs = 0;
  double mean_loss = 0.0;  // z before - z after
  double mean_gain = 0.0;  // f after - f before
};

struct ExperimentReport {
  ExperimentConfig config;
  int n = 0;
  int k_in = 0;
  int k_out = 0;
  std::string objective;
  std::string generator;
  std::uint64_t instance_seed = 0;

  std::string relaxation;
  double relaxation_value = 0.0;
  std::vector<double> x0;

  double mean = 0.0;
  double standard_error = 0.0;
  double mean_tau = 0.0;
  int max_tau = 0;

  double target_ratio = 0.0;
  // Present only when the exact oracle ran.
  std::optional<double> oracle_value;
  std::optional<double> ratio;
  std::optional<double> ratio_standard_error;
  // mean >= target * oracle - 4 se
  std::optional<bool> target_met;

  std::vector<StepStatistics> steps;
};

// Per-trial results for callers that aggregate themselves.
struct TrialOutcome {
  double value = 0.0;
  int tau = 0;
  std::vector<double> loss;
  std::vector<double> gain;
};

// Runs trials [0, trials) of the policy from x0, trial i on the stream
// split(seed, i), over `jobs` threads. Results are in trial order.
std::vector<TrialOutcome> run_trials(const ProbingInstance& inst,
                                     const FractionalPoint& x0, long trials,
                                     std::uint64_t seed, int jobs);

RelaxedSolution solve_relaxation(const ProbingInstance& inst, RunMode mode,
                                 int cg_steps);

ExperimentReport run_experiment(const ProbingInstance& inst,
                                const ExperimentConfig& config);

Json report_to_json(const ExperimentReport& report);
std::string report_csv_header();
std::string report_csv_row(const ExperimentReport& report);

struct Diagnostic {
  std::string check;
  bool ok = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
};

// Axioms of every matroid, objective properties, feasibility of the stored
// x0 (if any) and of a freshly solved relaxation, and decomposition plus
// exchange-map round trips at that point.
VerifyReport verify_instance(const InstanceFile& file, RunMode mode,
                             int cg_steps);

Json verify_to_json(const VerifyReport& report);

}  // namespace probekit

#endif  // PROBEKIT_EXPERIMENT_HPP_
