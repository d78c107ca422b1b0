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

#include <doctest.h>

#include <cmath>

#include "probekit/errors.hpp"
#include "probekit/experiment.hpp"
#include "probekit/generators.hpp"
#include "probekit/serialization.hpp"

using namespace probekit;

namespace {

ProbingInstance single(double p, double w) {
  ProbingInstance inst;
  inst.n = 1;
  inst.p = {p};
  inst.objective = Objective::linear({w});
  inst.inner = {Matroid::uniform(1, 1)};
  inst.outer = {Matroid::uniform(1, 1)};
  return inst;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("target ratios") {
  CHECK(target_ratio(RunMode::kLinear, 1, 1) == doctest::Approx(0.5));
  CHECK(target_ratio(RunMode::kLinear, 0, 1) == doctest::Approx(1.0));
  CHECK(target_ratio(RunMode::kSubmodular, 1, 1) ==
        doctest::Approx((1.0 - std::exp(-1.0)) / 3.0));
  CHECK(parse_run_mode("submodular") == RunMode::kSubmodular);
  CHECK_THROWS_AS(parse_run_mode("greedy"), DomainError);
}

TEST_CASE("single element mean matches p times w") {
  ExperimentConfig c;
  c.trials = 10000;
  c.seed = 5;
  const ExperimentReport r = run_experiment(single(0.3, 2.0), c);
  CHECK(r.standard_error > 0.0);
  CHECK(std::abs(r.mean - 0.6) <= 4.0 * r.standard_error);
  REQUIRE(r.oracle_value);
  CHECK(*r.oracle_value == doctest::Approx(0.6));
  CHECK(r.max_tau == 1);
  REQUIRE(r.target_met);
  CHECK(*r.target_met);
}

TEST_CASE("reports are reproducible and independent of worker count") {
  RandomOptions o;
  o.size = 7;
  o.k_in = 1;
  o.k_out = 2;
  const ProbingInstance inst = gen_random(o, 12);
  ExperimentConfig c;
  c.trials = 3000;
  c.seed = 77;
  c.jobs = 1;
  const std::string a = report_to_json(run_experiment(inst, c)).dump();
  c.jobs = 3;
  const ExperimentReport r3 = run_experiment(inst, c);
  CHECK(report_to_json(r3).dump() == a);
  CHECK(report_csv_row(r3) == report_csv_row(run_experiment(inst, c)));
  c.seed = 78;
  CHECK(report_to_json(run_experiment(inst, c)).dump() != a);
  REQUIRE(r3.ratio);
  CHECK(*r3.ratio >= r3.target_ratio - 4.0 * *r3.ratio_standard_error);
}

TEST_CASE("submodular run meets its target") {
  RandomOptions o;
  o.size = 6;
  o.objective = ObjectiveKind::kCoverage;
  const ProbingInstance inst = gen_random(o, 3);
  ExperimentConfig c;
  c.mode = RunMode::kSubmodular;
  c.trials = 4000;
  const ExperimentReport r = run_experiment(inst, c);
  REQUIRE(r.target_met);
  CHECK(*r.target_met);
  CHECK(r.relaxation == "continuous_greedy");
  c.mode = RunMode::kLinear;
  CHECK_THROWS_AS(run_experiment(inst, c), DomainError);
}

TEST_CASE("large instances skip the oracle") {
  RandomOptions o;
  o.size = 14;
  const ProbingInstance inst = gen_random(o, 1);
  ExperimentConfig c;
  c.trials = 200;
  const ExperimentReport r = run_experiment(inst, c);
  CHECK_FALSE(r.oracle_value);
  const Json j = report_to_json(r);
  CHECK(j["oracle"]["value"].is_null());
  CHECK(j["oracle"]["target_met"].is_null());
  CHECK(j["monte_carlo"]["standard_error"].get<double>() > 0.0);
}

TEST_CASE("verify: valid instance") {
  BipartiteOptions o;
  o.patience = {1, 2, 1, 1};
  const ProbingInstance inst = gen_bipartite_matching(o, 4);
  const VerifyReport v = verify_instance({inst, std::nullopt}, RunMode::kLinear, 50);
  CHECK(v.ok());
  bool saw_exchange = false;
  for (const Diagnostic& d : v.diagnostics) saw_exchange |= contains(d.check, "exchange map");
  CHECK(saw_exchange);
  CHECK(verify_to_json(v)["ok"].get<bool>());
}

TEST_CASE("verify: a non-matroid family is named") {
  RandomOptions o;
  o.size = 3;
  Json j = instance_to_json(gen_random(o, 2));
  // {0,1} without {1}: not downward closed.
  j["outer"][0] = {{"kind", "explicit"}, {"n", 3},
                   {"independent", {Json::array(), {0}, {0, 1}}}};
  const VerifyReport v = verify_instance(instance_from_json(j), RunMode::kLinear, 50);
  CHECK_FALSE(v.ok());
  bool named = false;
  for (const Diagnostic& d : v.diagnostics) {
    if (d.check == "axioms outer[0]") {
      named = true;
      CHECK_FALSE(d.ok);
      CHECK_FALSE(d.detail.empty());
    }
  }
  CHECK(named);
}

TEST_CASE("verify: tampered x0 names the violated constraint") {
  const ProbingInstance inst = single(0.5, 1.0);
  const VerifyReport ok = verify_instance({inst, std::vector<double>{0.9}}, RunMode::kLinear, 50);
  CHECK(ok.ok());
  ProbingInstance two;
  two.n = 2;
  two.p = {1.0, 1.0};
  two.objective = Objective::linear({1.0, 1.0});
  two.inner = {};
  two.outer = {Matroid::uniform(2, 1)};
  const VerifyReport bad = verify_instance({two, std::vector<double>{0.7, 0.7}}, RunMode::kLinear, 50);
  CHECK_FALSE(bad.ok());
  bool named = false;
  for (const Diagnostic& d : bad.diagnostics) {
    if (d.check == "x0 feasibility") {
      named = true;
      CHECK_FALSE(d.ok);
      CHECK(contains(d.detail, "outer matroid 0"));
    }
  }
  CHECK(named);
}
