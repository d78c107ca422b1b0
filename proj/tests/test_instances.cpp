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

#include "probekit/engine.hpp"
#include "probekit/errors.hpp"
#include "probekit/experiment.hpp"
#include "probekit/generators.hpp"
#include "probekit/oracle.hpp"
#include "probekit/relaxation.hpp"
#include "probekit/serialization.hpp"
#include "support/oracles.hpp"

using namespace probekit;

namespace {

void check_all_axioms(const ProbingInstance& inst) {
  CHECK_FALSE(validate(inst).has_value());
  for (const Matroid& m : inst.inner) {
    CHECK(oracles::exchange_axiom_holds(oracles::oracle_of(m), m.ground()));
    CHECK(oracles::downward_closed(oracles::oracle_of(m), m.ground()));
  }
  for (const Matroid& m : inst.outer) {
    CHECK(oracles::exchange_axiom_holds(oracles::oracle_of(m), m.ground()));
    CHECK(oracles::downward_closed(oracles::oracle_of(m), m.ground()));
  }
  if (inst.n <= 10) CHECK_FALSE(check_monotone_submodular(inst.objective).has_value());
}

std::pair<int, int> endpoints(const std::string& label) {
  // "u<i>-v<j>"
  const auto dash = label.find('-');
  return {std::stoi(label.substr(1, dash - 1)), std::stoi(label.substr(dash + 2))};
}

}  // namespace

TEST_CASE("bipartite: full patience makes the outer constraints vacuous") {
  BipartiteOptions o;
  o.n_left = 2;
  o.n_right = 3;
  // Degrees in K_{2,3}: 3 on the left, 2 on the right.
  o.patience = {3, 3, 2, 2, 2};
  const ProbingInstance inst = gen_bipartite_matching(o, 1);
  CHECK(inst.n == 6);
  CHECK(inst.k_in() == 2);
  CHECK(inst.k_out() == 2);
  for_each_subset(inst.ground(), [&](ElementSet s) { CHECK(inst.outer_feasible(s)); });
  check_all_axioms(inst);
}

TEST_CASE("bipartite: single edge") {
  BipartiteOptions o;
  o.n_left = 1;
  o.n_right = 1;
  o.edge_prob = 0.5;
  o.unit_weights = true;
  const ProbingInstance inst = gen_bipartite_matching(o, 2);
  CHECK(inst.n == 1);
  CHECK(optimal_adaptive_value(inst) == doctest::Approx(0.5));
}

TEST_CASE("bipartite: taken sets are matchings") {
  BipartiteOptions o;
  o.n_left = 3;
  o.n_right = 3;
  o.density = 0.8;
  o.patience = {2, 1, 2, 1, 2, 1};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ProbingInstance inst = gen_bipartite_matching(o, seed);
    check_all_axioms(inst);
    const FractionalPoint x0 = solve_linear_relaxation(inst).x0;
    for (int r = 0; r < 20; ++r) {
      RandomStream rng = RandomStream::split(seed, r);
      const Trace t = run_policy(inst, x0, rng);
      std::vector<int> left(3, 0), right(3, 0), probed_left(3, 0), probed_right(3, 0);
      for (Element e : t.active) {
        auto [u, v] = endpoints(inst.labels[e]);
        CHECK(++left[u] <= 1);
        CHECK(++right[v] <= 1);
      }
      for (Element e : t.probed) {
        auto [u, v] = endpoints(inst.labels[e]);
        CHECK(++probed_left[u] <= o.patience[u]);
        CHECK(++probed_right[v] <= o.patience[3 + v]);
      }
    }
  }
}

TEST_CASE("bipartite: coverage objective and bad patience") {
  BipartiteOptions o;
  o.objective = ObjectiveKind::kCoverage;
  const ProbingInstance inst = gen_bipartite_matching(o, 3);
  CHECK(inst.objective.kind() == ObjectiveKind::kCoverage);
  check_all_axioms(inst);
  o.patience = {1, 0, 1, 1};
  CHECK_THROWS_AS(gen_bipartite_matching(o, 3), DomainError);
  o.patience = {1, 1};
  CHECK_THROWS_AS(gen_bipartite_matching(o, 3), DomainError);
}

TEST_CASE("posted pricing: tail probabilities") {
  PostedPricingOptions o;
  o.n_agents = 1;
  o.max_price = 1;
  o.valuations = {{0.5, 0.5}};
  const ProbingInstance inst = gen_posted_pricing(o, 1);
  REQUIRE(inst.n == 2);
  CHECK(inst.p[0] == doctest::Approx(1.0));
  CHECK(inst.p[1] == doctest::Approx(0.5));
  CHECK(inst.objective.value({1}) == 1.0);
  CHECK(inst.objective.value({0}) == 0.0);
}

TEST_CASE("posted pricing: one offer per agent and monotone tails") {
  PostedPricingOptions o;
  o.n_agents = 3;
  o.max_price = 2;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ProbingInstance inst = gen_posted_pricing(o, seed);
    CHECK(inst.k_out() == 1);
    CHECK(inst.k_in() == 1);
    check_all_axioms(inst);
    for (int i = 0; i < 3; ++i) {
      // Two offers to one agent are outer-infeasible whatever the inner side.
      CHECK_FALSE(inst.outer_feasible({i * 3, i * 3 + 1}));
      for (int c = 1; c < 3; ++c) CHECK(inst.p[i * 3 + c] <= inst.p[i * 3 + c - 1]);
    }
  }
}

TEST_CASE("posted pricing: single-item target") {
  // Serving one agent is a rank-1 uniform matroid; with one outer matroid
  // the target is 1/(k_in + k_out) = 1/2.
  PostedPricingOptions o;
  o.n_agents = 3;
  o.max_price = 2;
  const ProbingInstance inst = gen_posted_pricing(o, 4);
  CHECK(target_ratio(RunMode::kLinear, inst.k_in(), inst.k_out()) == doctest::Approx(0.5));
  for_each_subset(inst.ground(), [&](ElementSet s) {
    CHECK(inst.inner_feasible(s) == (s.size() <= 1));
  });
}

TEST_CASE("posted pricing: lifted feasibility matroids") {
  PostedPricingOptions o;
  o.n_agents = 3;
  o.max_price = 1;
  o.feasibility = Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}});
  const ProbingInstance inst = gen_posted_pricing(o, 5);
  check_all_axioms(inst);
  o.feasibility = Matroid::partition({0, 0, 1}, {1, 1});
  const ProbingInstance part = gen_posted_pricing(o, 5);
  check_all_axioms(part);
  for_each_subset(part.ground(), [&](ElementSet s) {
    ElementSet agents;
    bool distinct = true;
    for (Element e : s) {
      distinct = distinct && !agents.contains(e / 2);
      agents.insert(e / 2);
    }
    CHECK(part.inner_feasible(s) ==
          (distinct && o.feasibility->is_independent(agents)));
  });
}

TEST_CASE("random: outer count and determinism") {
  RandomOptions o;
  o.size = 6;
  o.k_in = 0;
  o.k_out = 1;
  CHECK(gen_random(o, 1).k_in() == 0);
  o.k_out = 0;
  CHECK_THROWS_AS(gen_random(o, 1), DomainError);
  o.k_out = 2;
  o.k_in = 2;
  o.objective = ObjectiveKind::kCoverage;
  CHECK(instance_to_json(gen_random(o, 9)) == instance_to_json(gen_random(o, 9)));
  CHECK(instance_to_json(gen_random(o, 9)) != instance_to_json(gen_random(o, 10)));
}

TEST_CASE("random: every generated matroid is a matroid") {
  RandomStream rng(6);
  int explicit_seen = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomOptions o;
    o.size = 1 + rng.below(8);
    o.k_in = rng.below(3);
    o.k_out = 1 + rng.below(2);
    o.objective = static_cast<ObjectiveKind>(seed % 3);
    const ProbingInstance inst = gen_random(o, seed);
    check_all_axioms(inst);
    for (const Matroid& m : inst.outer) explicit_seen += m.kind() == MatroidKind::kExplicit;
    for (double p : inst.p) {
      CHECK(p >= 0.1);
      CHECK(p <= 1.0);
    }
  }
  CHECK(explicit_seen > 5);
  for (int n = 1; n <= 8; ++n) {
    for (int t = 0; t < 10; ++t) {
      const Matroid m = random_explicit_matroid(n, rng);
      CHECK(oracles::exchange_axiom_holds(oracles::oracle_of(m), m.ground()));
    }
  }
}

TEST_CASE("generator dispatch") {
  GeneratorSpec spec;
  spec.kind = parse_generator_kind("pricing");
  spec.seed = 3;
  CHECK(generate(spec).metadata.generator == "posted_pricing");
  CHECK(parse_generator_kind("stochastic_matching_bipartite") ==
        GeneratorKind::kBipartiteMatching);
  CHECK_THROWS_AS(parse_generator_kind("kidney"), DomainError);
  CHECK(parse_objective_kind("coverage") == ObjectiveKind::kCoverage);
}

TEST_CASE("instance files round-trip") {
  RandomStream rng(8);
  const ObjectiveKind kinds[] = {ObjectiveKind::kLinear, ObjectiveKind::kCoverage,
                                 ObjectiveKind::kWeightedMatroidRank};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomOptions o;
    o.size = 1 + rng.below(8);
    o.k_in = rng.below(3);
    o.k_out = 1 + rng.below(2);
    o.objective = kinds[seed % 3];
    const ProbingInstance inst = gen_random(o, seed);
    const std::vector<double> x0(inst.n, 0.0);
    const Json j = instance_to_json(inst, x0);
    const InstanceFile back = instance_from_json(Json::parse(j.dump()));
    CHECK(instance_to_json(back.instance, back.x0) == j);
    CHECK(back.x0 == x0);
    for_each_subset(inst.ground(), [&](ElementSet s) {
      CHECK(back.instance.objective.value(s) == inst.objective.value(s));
      CHECK(back.instance.outer_feasible(s) == inst.outer_feasible(s));
      CHECK(back.instance.inner_feasible(s) == inst.inner_feasible(s));
    });
  }
  BipartiteOptions b;
  const ProbingInstance bip = gen_bipartite_matching(b, 1);
  const std::string path = "instance_roundtrip.json";
  save_instance_file(path, bip);
  CHECK(instance_to_json(load_instance_file(path).instance) == instance_to_json(bip));
}

TEST_CASE("schema errors are domain errors") {
  RandomOptions o;
  Json j = instance_to_json(gen_random(o, 1));
  Json bad = j;
  bad["outer"] = Json::array();
  CHECK_THROWS_AS(instance_from_json(bad), DomainError);
  bad = j;
  bad.erase("p");
  CHECK_THROWS_AS(instance_from_json(bad), DomainError);
  bad = j;
  bad["p"][0] = 1.5;
  CHECK_THROWS_AS(instance_from_json(bad), DomainError);
  bad = j;
  bad["outer"][0] = {{"kind", "laminar"}};
  CHECK_THROWS_AS(instance_from_json(bad), DomainError);
  bad = j;
  bad["x0"] = {0.5};
  CHECK_THROWS_AS(instance_from_json(bad), DomainError);
  CHECK_THROWS_AS(load_instance_file("does/not/exist.json"), DomainError);
}
