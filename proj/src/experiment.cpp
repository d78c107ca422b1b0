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

#include "probekit/experiment.hpp"

#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

#include "probekit/engine.hpp"
#include "probekit/errors.hpp"
#include "probekit/oracle.hpp"
#include "probekit/polytope.hpp"

namespace probekit {

const char* to_string(RunMode mode) {
  return mode == RunMode::kLinear ? "linear" : "submodular";
}

RunMode parse_run_mode(const std::string& name) {
  if (name == "linear") return RunMode::kLinear;
  if (name == "submodular") return RunMode::kSubmodular;
  throw DomainError("unknown mode '" + name + "' (linear|submodular)");
}

RunMode default_mode(const ProbingInstance& inst) {
  return inst.objective.is_linear() ? RunMode::kLinear : RunMode::kSubmodular;
}

double target_ratio(RunMode mode, int k_in, int k_out) {
  const int k = k_in + k_out;
  if (mode == RunMode::kLinear) return 1.0 / k;
  return (1.0 - std::exp(-1.0)) / (k + 1);
}

std::vector<TrialOutcome> run_trials(const ProbingInstance& inst,
                                     const FractionalPoint& x0, long trials,
                                     std::uint64_t seed, int jobs) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = static_cast<int>(std::clamp<long>(jobs, 1, trials));

  std::vector<TrialOutcome> out(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  auto work = [&](int worker) {
    try {
      for (long i = worker; i < trials; i += jobs) {
        RandomStream rng = RandomStream::split(seed, static_cast<std::uint64_t>(i));
        const Trace trace = run_policy(inst, x0, rng);
        TrialOutcome& o = out[static_cast<std::size_t>(i)];
        o.value = trace.value;
        o.tau = trace.tau();
        for (const TraceStep& s : trace.steps) {
          o.loss.push_back(s.z_before - s.z_after);
          o.gain.push_back(s.f_after - s.f_before);
        }
      }
    } catch (...) {
      errors[static_cast<std::size_t>(worker)] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

RelaxedSolution solve_relaxation(const ProbingInstance& inst, RunMode mode,
                                 int cg_steps) {
  if (mode == RunMode::kLinear) {
    if (!inst.objective.is_linear()) {
      throw DomainError(std::string("mode linear needs a linear objective, got ") +
                        to_string(inst.objective.kind()) +
                        "; use --mode submodular");
    }
    return solve_linear_relaxation(inst);
  }
  if (cg_steps < 1) throw DomainError("cg-steps must be >= 1");
  return continuous_greedy(inst, cg_steps);
}

ExperimentReport run_experiment(const ProbingInstance& inst,
                                const ExperimentConfig& config) {
  require_valid(inst);
  ExperimentReport r;
  r.config = config;
  r.n = inst.n;
  r.k_in = inst.k_in();
  r.k_out = inst.k_out();
  r.objective = to_string(inst.objective.kind());
  r.generator = inst.metadata.generator;
  r.instance_seed = inst.metadata.seed;

  const RelaxedSolution relaxed =
      solve_relaxation(inst, config.mode, config.cg_steps);
  r.relaxation = to_string(relaxed.mode);
  r.relaxation_value = relaxed.objective_value;
  r.x0 = relaxed.x0;

  const std::vector<TrialOutcome> trials =
      run_trials(inst, relaxed.x0, config.trials, config.seed, config.jobs);
  const double count = static_cast<double>(trials.size());
  double sum = 0.0;
  double tau_sum = 0.0;
  for (const TrialOutcome& t : trials) {
    sum += t.value;
    tau_sum += t.tau;
    r.max_tau = std::max(r.max_tau, t.tau);
  }
  r.mean = sum / count;
  r.mean_tau = tau_sum / count;
  if (trials.size() > 1) {
    double ss = 0.0;
    for (const TrialOutcome& t : trials) ss += (t.value - r.mean) * (t.value - r.mean);
    r.standard_error = std::sqrt(ss / (count - 1.0) / count);
  }
  r.steps.resize(static_cast<std::size_t>(r.max_tau));
  for (int t = 0; t < r.max_tau; ++t) r.steps[t].t = t + 1;
  for (const TrialOutcome& trial : trials) {
    for (int t = 0; t < trial.tau; ++t) {
      StepStatistics& s = r.steps[t];
      ++s.runs;
      s.mean_loss += trial.loss[t];
      s.mean_gain += trial.gain[t];
    }
  }
  for (StepStatistics& s : r.steps) {
    s.mean_loss /= static_cast<double>(s.runs);
    s.mean_gain /= static_cast<double>(s.runs);
  }

  r.target_ratio = target_ratio(config.mode, r.k_in, r.k_out);
  if (inst.n <= kOracleMaxGround) {
    const double opt = optimal_adaptive_value(inst);
    r.oracle_value = opt;
    if (opt > 0.0) {
      r.ratio = r.mean / opt;
      r.ratio_standard_error = r.standard_error / opt;
    }
    r.target_met = r.mean >= r.target_ratio * opt - 4.0 * r.standard_error;
  }
  return r;
}

namespace {

Json optional_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json config_json(const ExperimentConfig& c) {
  return {{"instance", c.instance}, {"trials", c.trials},
          {"seed", c.seed},         {"mode", to_string(c.mode)},
          {"cg_steps", c.cg_steps}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : ""; }

}  // namespace

Json report_to_json(const ExperimentReport& r) {
  Json j;
  j["config"] = config_json(r.config);
  j["instance"] = {{"n", r.n},
                   {"k_in", r.k_in},
                   {"k_out", r.k_out},
                   {"objective", r.objective},
                   {"generator", r.generator},
                   {"seed", r.instance_seed}};
  j["relaxation"] = {{"method", r.relaxation},
                     {"value", r.relaxation_value},
                     {"x0", r.x0}};
  j["monte_carlo"] = {{"trials", r.config.trials},
                      {"mean", r.mean},
                      {"standard_error", r.standard_error},
                      {"mean_tau", r.mean_tau},
                      {"max_tau", r.max_tau}};
  j["oracle"] = {{"value", optional_json(r.oracle_value)},
                 {"ratio", optional_json(r.ratio)},
                 {"ratio_standard_error", optional_json(r.ratio_standard_error)},
                 {"target_ratio", r.target_ratio},
                 {"target_met", r.target_met ? Json(*r.target_met) : Json(nullptr)}};
  Json steps = Json::array();
  for (const StepStatistics& s : r.steps) {
    steps.push_back({{"t", s.t},
                     {"runs", s.runs},
                     {"mean_loss", s.mean_loss},
                     {"mean_gain", s.mean_gain}});
  }
  j["drift"] = steps;
  return j;
}

std::string report_csv_header() {
  return "instance,trials,seed,mode,cg_steps,generator,instance_seed,n,k_in,"
         "k_out,objective,relaxation,relaxation_value,mean,standard_error,"
         "mean_tau,max_tau,oracle_value,ratio,ratio_standard_error,"
         "target_ratio,target_met";
}

std::string report_csv_row(const ExperimentReport& r) {
  std::ostringstream os;
  os << csv_field(r.config.instance) << ',' << r.config.trials << ','
     << r.config.seed << ',' << to_string(r.config.mode) << ','
     << r.config.cg_steps << ',' << csv_field(r.generator) << ','
     << r.instance_seed << ',' << r.n << ',' << r.k_in << ',' << r.k_out << ','
     << r.objective << ',' << r.relaxation << ',' << num(r.relaxation_value)
     << ',' << num(r.mean) << ',' << num(r.standard_error) << ','
     << num(r.mean_tau) << ',' << r.max_tau << ',' << num(r.oracle_value)
     << ',' << num(r.ratio) << ',' << num(r.ratio_standard_error) << ','
     << num(r.target_ratio) << ','
     << (r.target_met ? (*r.target_met ? "true" : "false") : "");
  return os.str();
}

bool VerifyReport::ok() const {
  for (const Diagnostic& d : diagnostics) {
    if (!d.ok) return false;
  }
  return true;
}

namespace {

void check_supports(const std::string& name, const Matroid& m,
                    const FractionalPoint& x, VerifyReport& out) {
  try {
    const ConvexDecomposition d = decompose(m, x);
    if (auto v = check_decomposition(d, &x, kSnapTolerance)) {
      out.diagnostics.push_back({"decomposition " + name, false, *v});
      return;
    }
    out.diagnostics.push_back(
        {"decomposition " + name, true,
         std::to_string(d.terms.size()) + " terms"});
    for (std::size_t a = 0; a < d.terms.size(); ++a) {
      for (std::size_t b = 0; b < d.terms.size(); ++b) {
        if (a == b) continue;
        const ExchangeMap phi = exchange_map(m, d.terms[a].set, d.terms[b].set);
        if (auto v = check_exchange_map(m, phi)) {
          out.diagnostics.push_back({"exchange map " + name, false, *v});
          return;
        }
      }
    }
    out.diagnostics.push_back({"exchange map " + name, true, ""});
  } catch (const std::exception& e) {
    out.diagnostics.push_back({"decomposition " + name, false, e.what()});
  }
}

}  // namespace

VerifyReport verify_instance(const InstanceFile& file, RunMode mode,
                             int cg_steps) {
  VerifyReport out;
  const ProbingInstance& inst = file.instance;
  if (auto v = validate(inst)) {
    out.diagnostics.push_back({"instance", false, *v});
    return out;
  }
  out.diagnostics.push_back({"instance", true, ""});

  bool axioms_ok = true;
  auto axioms = [&](const std::string& name, const Matroid& m) {
    const auto v = verify_axioms(m);
    axioms_ok = axioms_ok && !v;
    out.diagnostics.push_back({"axioms " + name, !v, v.value_or("")});
  };
  for (int j = 0; j < inst.k_in(); ++j) axioms("inner[" + std::to_string(j) + "]", inst.inner[j]);
  for (int j = 0; j < inst.k_out(); ++j) axioms("outer[" + std::to_string(j) + "]", inst.outer[j]);
  if (inst.n <= kExactMaxGround) {
    const auto v = check_monotone_submodular(inst.objective);
    out.diagnostics.push_back({"objective", !v, v.value_or("")});
  }
  if (!axioms_ok) {
    out.diagnostics.push_back(
        {"relaxation", true, "skipped: matroid axioms fail"});
    return out;
  }

  FractionalPoint point;
  if (file.x0) {
    const auto v = relaxation_violation(inst, *file.x0, kRelaxationTolerance);
    out.diagnostics.push_back({"x0 feasibility", !v, v.value_or("")});
    if (!v) point = *file.x0;
  }
  RelaxedSolution relaxed = solve_relaxation(inst, mode, cg_steps);
  {
    const auto v = relaxation_violation(inst, relaxed.x0, kRelaxationTolerance);
    std::ostringstream detail;
    detail << to_string(relaxed.mode) << " value " << std::setprecision(10)
           << relaxed.objective_value;
    out.diagnostics.push_back(
        {"relaxation feasibility", !v, v ? *v : detail.str()});
    if (v) return out;
  }
  if (point.empty()) point = relaxed.x0;
  // Same clean-up as the engine's starting state (dust and loops zeroed).
  const PolicyState state = initial_state(inst, point);
  for (int j = 0; j < inst.k_out(); ++j) {
    check_supports("outer[" + std::to_string(j) + "]", inst.outer[j], state.x, out);
  }
  const FractionalPoint px = scale_by_probability(inst, state.x);
  for (int j = 0; j < inst.k_in(); ++j) {
    check_supports("inner[" + std::to_string(j) + "]", inst.inner[j], px, out);
  }
  return out;
}

Json verify_to_json(const VerifyReport& report) {
  Json checks = Json::array();
  for (const Diagnostic& d : report.diagnostics) {
    checks.push_back({{"check", d.check}, {"ok", d.ok}, {"detail", d.detail}});
  }
  return {{"ok", report.ok()}, {"checks", checks}};
}

}  // namespace probekit
