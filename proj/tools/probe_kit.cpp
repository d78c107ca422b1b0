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

// probe-kit: generate instances, run policy experiments, verify instances.
//
// Exit codes: 0 ok, 1 usage, 2 verification failure, 3 capability exceeded.
// Every flag can also be set through PROBE_KIT_<FLAG> (upper case, dashes
// as underscores); an explicit flag wins.

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probekit/errors.hpp"
#include "probekit/experiment.hpp"
#include "probekit/generators.hpp"
#include "probekit/serialization.hpp"

namespace {

using namespace probekit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitCapability = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string env_name(const std::string& flag) {
  std::string out = "PROBE_KIT_";
  for (char c : flag) {
    out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& value,
                  const std::string& help) {
  return app->add_option("--" + name, value, help)->envname(env_name(name));
}

struct GeneratorFlags {
  std::string generator;
  std::uint64_t seed = 1;
  int size = 6;
  int k_in = 1;
  int k_out = 1;
  std::string objective = "linear";
  int n_left = 2;
  int n_right = 2;
  std::vector<int> patience;
  double edge_prob = -1.0;
  double density = 1.0;
  bool unit_weights = false;
  int agents = 2;
  int max_price = 2;

  void attach(CLI::App* app, const std::string& seed_flag) {
    flag(app, "generator", generator,
         "random | bipartite | pricing (or canonical names)");
    flag(app, seed_flag, seed, "generator seed");
    flag(app, "size", size, "random: number of elements");
    flag(app, "k-in", k_in, "random: inner matroids");
    flag(app, "k-out", k_out, "random: outer matroids");
    flag(app, "objective", objective, "linear | coverage | weighted_matroid_rank");
    flag(app, "n-left", n_left, "bipartite: left vertices");
    flag(app, "n-right", n_right, "bipartite: right vertices");
    flag(app, "patience", patience, "bipartite: per-vertex patience, left first")
        ->delimiter(',');
    flag(app, "edge-prob", edge_prob, "bipartite: activation probability (<0 random)");
    flag(app, "density", density, "bipartite: edge density");
    app->add_flag("--unit-weights", unit_weights, "bipartite: unit edge weights")
        ->envname(env_name("unit-weights"));
    flag(app, "agents", agents, "pricing: number of agents");
    flag(app, "max-price", max_price, "pricing: highest price level B");
  }

  GeneratorSpec spec() const {
    GeneratorSpec s;
    s.kind = parse_generator_kind(generator);
    s.seed = seed;
    const ObjectiveKind kind = parse_objective_kind(objective);
    s.random = {size, k_in, k_out, kind};
    s.bipartite.n_left = n_left;
    s.bipartite.n_right = n_right;
    s.bipartite.patience = patience;
    s.bipartite.edge_prob = edge_prob;
    s.bipartite.density = density;
    s.bipartite.objective = kind;
    s.bipartite.unit_weights = unit_weights;
    s.pricing.n_agents = agents;
    s.pricing.max_price = max_price;
    return s;
  }

  std::string describe() const {
    std::ostringstream os;
    os << to_string(parse_generator_kind(generator)) << ":seed=" << seed;
    return os.str();
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

int cmd_generate(const GeneratorFlags& g, bool with_x0, const std::string& mode,
                 int cg_steps, const std::string& out) {
  if (g.generator.empty()) throw UsageError("generate: --generator is required");
  const ProbingInstance inst = generate(g.spec());
  std::optional<std::vector<double>> x0;
  if (with_x0) {
    const RunMode m = mode.empty() ? default_mode(inst) : parse_run_mode(mode);
    x0 = solve_relaxation(inst, m, cg_steps).x0;
  }
  write_output(out, instance_to_json(inst, x0).dump(2) + "\n");
  return kExitOk;
}

ProbingInstance load_source(const std::string& path, const GeneratorFlags& g,
                            std::string& label) {
  if (!path.empty() && !g.generator.empty()) {
    throw UsageError("give either --instance or --generator, not both");
  }
  if (!path.empty()) {
    label = path;
    return load_instance_file(path).instance;
  }
  if (g.generator.empty()) throw UsageError("--instance or --generator is required");
  label = g.describe();
  return generate(g.spec());
}

int cmd_run(const std::string& path, const GeneratorFlags& g,
            ExperimentConfig config, const std::string& mode,
            const std::string& format, const std::string& out) {
  if (format != "json" && format != "csv") {
    throw UsageError("--format must be json or csv");
  }
  if (config.trials < 1) throw UsageError("--trials must be >= 1");
  if (config.jobs < 0) throw UsageError("--jobs must be >= 0");
  const ProbingInstance inst = load_source(path, g, config.instance);
  config.mode = mode.empty() ? default_mode(inst) : parse_run_mode(mode);
  const ExperimentReport report = run_experiment(inst, config);
  if (format == "json") {
    write_output(out, report_to_json(report).dump(2) + "\n");
  } else {
    write_output(out, report_csv_header() + "\n" + report_csv_row(report) + "\n");
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& mode, int cg_steps,
               const std::string& out) {
  if (path.empty()) throw UsageError("verify: --instance is required");
  const InstanceFile file = load_instance_file(path);
  const RunMode m = mode.empty() ? default_mode(file.instance) : parse_run_mode(mode);
  const VerifyReport report = verify_instance(file, m, cg_steps);
  write_output(out, verify_to_json(report).dump(2) + "\n");
  for (const Diagnostic& d : report.diagnostics) {
    if (!d.ok) std::cerr << "verify: " << d.check << ": " << d.detail << "\n";
  }
  return report.ok() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probe-kit: stochastic probing on matroids"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("generate", "write a generated instance");
  GeneratorFlags gen_flags;
  gen_flags.attach(gen, "seed");
  bool with_x0 = false;
  std::string gen_mode, gen_out;
  int gen_cg = kDefaultGreedySteps;
  gen->add_flag("--with-x0", with_x0, "also store a solved relaxation point")
      ->envname(env_name("with-x0"));
  flag(gen, "mode", gen_mode, "relaxation for --with-x0: linear | submodular");
  flag(gen, "cg-steps", gen_cg, "continuous greedy steps");
  flag(gen, "out", gen_out, "output path (default stdout)");

  CLI::App* run = app.add_subcommand("run", "Monte Carlo policy experiment");
  GeneratorFlags run_flags;
  run_flags.attach(run, "gen-seed");
  ExperimentConfig config;
  std::string run_path, run_mode, format = "json", run_out;
  flag(run, "instance", run_path, "instance JSON file");
  flag(run, "trials", config.trials, "policy runs");
  flag(run, "seed", config.seed, "trial seed");
  flag(run, "mode", run_mode, "linear | submodular (default from objective)");
  flag(run, "cg-steps", config.cg_steps, "continuous greedy steps");
  flag(run, "out", run_out, "output path (default stdout)");
  flag(run, "format", format, "json | csv");
  flag(run, "jobs", config.jobs, "worker threads (0 = all cores)");

  CLI::App* ver = app.add_subcommand("verify", "check an instance file");
  std::string ver_path, ver_mode, ver_out;
  int ver_cg = kDefaultGreedySteps;
  flag(ver, "instance", ver_path, "instance JSON file");
  flag(ver, "mode", ver_mode, "linear | submodular (default from objective)");
  flag(ver, "cg-steps", ver_cg, "continuous greedy steps");
  flag(ver, "out", ver_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(gen_flags, with_x0, gen_mode, gen_cg, gen_out);
    if (*run) return cmd_run(run_path, run_flags, config, run_mode, format, run_out);
    return cmd_verify(ver_path, ver_mode, ver_cg, ver_out);
  } catch (const UsageError& e) {
    std::cerr << "probe-kit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapabilityError& e) {
    std::cerr << "probe-kit: capability exceeded: " << e.what() << "\n";
    return kExitCapability;
  } catch (const DomainError& e) {
    std::cerr << "probe-kit: invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvariantError& e) {
    std::cerr << "probe-kit: invariant failure: " << e.what() << "\n"
              << e.dump() << "\n";
    return kExitVerify;
  }
}
