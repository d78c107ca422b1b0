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

#include "probekit/errors.hpp"
#include "probekit/generators.hpp"
#include "probekit/oracle.hpp"
#include "support/oracles.hpp"

using namespace probekit;

namespace {

ProbingInstance simple(std::vector<double> p, std::vector<double> w) {
  ProbingInstance inst;
  inst.n = static_cast<int>(p.size());
  inst.p = std::move(p);
  inst.objective = Objective::linear(std::move(w));
  inst.outer = {Matroid::free(inst.n)};
  return inst;
}

ProbingInstance random_instance(std::uint64_t seed, int max_n,
                                ObjectiveKind kind = ObjectiveKind::kLinear) {
  RandomStream rng(seed);
  RandomOptions o;
  o.size = 1 + rng.below(max_n);
  o.k_in = rng.below(3);
  o.k_out = 1 + rng.below(2);
  o.objective = kind;
  return gen_random(o, seed);
}

}  // namespace

TEST_CASE("hand-computed optima") {
  CHECK(optimal_adaptive_value(simple({0.5}, {2.0})) == doctest::Approx(1.0));

  // Probe until the first success: 1 - 0.25.
  ProbingInstance two = simple({0.5, 0.5}, {1.0, 1.0});
  two.inner = {Matroid::uniform(2, 1)};
  CHECK(optimal_adaptive_value(two) == doctest::Approx(0.75));
}

TEST_CASE("deterministic instances reduce to a common independent set") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ProbingInstance inst = random_instance(seed, 8);
    std::fill(inst.p.begin(), inst.p.end(), 1.0);
    double best = 0.0;
    for_each_subset(inst.ground(), [&](ElementSet s) {
      bool ok = true;
      for (const Matroid& m : inst.outer) ok = ok && oracles::independent(m.definition(), s);
      for (const Matroid& m : inst.inner) ok = ok && oracles::independent(m.definition(), s);
      if (ok) best = std::max(best, inst.objective.value(s));
    });
    CHECK(optimal_adaptive_value(inst) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("memoized values match plain recursion") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ObjectiveKind kind = seed % 2 ? ObjectiveKind::kCoverage : ObjectiveKind::kLinear;
    const ProbingInstance inst = random_instance(50 + seed, 6, kind);
    CHECK(optimal_adaptive_value(inst) ==
          doctest::Approx(oracles::adaptive_value(inst)).epsilon(1e-12));
  }
}

TEST_CASE("tree evaluation examples") {
  const ProbingInstance inst = simple({0.3}, {1.0});
  CHECK(policy_value_exact(inst, DecisionTree{}) == 0.0);
  DecisionTree one;
  one.nodes.push_back({0, -1, -1});
  one.root = 0;
  CHECK(policy_value_exact(inst, one) == doctest::Approx(0.3));
  CHECK(probe_marginals(inst, one) == std::vector<double>{1.0});
}

TEST_CASE("recovered trees achieve the optimum") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ProbingInstance inst = random_instance(100 + seed, 8,
        seed % 3 ? ObjectiveKind::kLinear : ObjectiveKind::kWeightedMatroidRank);
    const DecisionTree tree = optimal_policy_tree(inst);
    CHECK(policy_value_exact(inst, tree) ==
          doctest::Approx(optimal_adaptive_value(inst)).epsilon(1e-12));
    for (double m : probe_marginals(inst, tree)) {
      CHECK(m >= -1e-15);
      CHECK(m <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("malformed trees are rejected") {
  ProbingInstance inst = simple({0.5, 0.5}, {1.0, 1.0});
  DecisionTree twice;
  twice.nodes = {{0, 1, 1}, {0, -1, -1}};
  twice.root = 0;
  CHECK_THROWS_AS(policy_value_exact(inst, twice), DomainError);

  inst.outer = {Matroid::uniform(2, 1)};
  DecisionTree both;
  both.nodes = {{0, 1, 1}, {1, -1, -1}};
  both.root = 0;
  CHECK_THROWS_AS(policy_value_exact(inst, both), DomainError);
}

TEST_CASE("raising a probability never lowers the optimum") {
  RandomStream rng(3);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const ProbingInstance inst = random_instance(200 + seed, 7);
    ProbingInstance raised = inst;
    const Element e = rng.below(inst.n);
    raised.p[e] = inst.p[e] + (1.0 - inst.p[e]) * rng.uniform();
    CHECK(optimal_adaptive_value(raised) >= optimal_adaptive_value(inst) - 1e-12);
  }
}

TEST_CASE("oracle capacity") {
  RandomOptions o;
  o.size = kOracleMaxGround + 1;
  CHECK_THROWS_AS(optimal_adaptive_value(gen_random(o, 1)), CapabilityError);
}
