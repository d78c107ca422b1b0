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

#ifndef PROBEKIT_GENERATORS_HPP_
#define PROBEKIT_GENERATORS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probekit/instance.hpp"
#include "probekit/matroid.hpp"
#include "probekit/objective.hpp"
#include "probekit/random.hpp"

namespace probekit {

// Stochastic matching on a bipartite graph. Elements are edges (u, v) of
// K_{n_left, n_right} kept with probability `density`, in row-major order.
struct BipartiteOptions {
  int n_left = 2;
  int n_right = 2;
  // Per-vertex probe budget, left vertices first. Empty means 1 everywhere.
  std::vector<int> patience;
  // Activation probability of every edge; negative draws each from
  // [0.1, 1].
  double edge_prob = -1.0;
  double density = 1.0;
  ObjectiveKind objective = ObjectiveKind::kLinear;
  bool unit_weights = false;
};

// Inner: one edge per left and per right vertex. Outer: at most patience(u)
// probed edges at each vertex u.
ProbingInstance gen_bipartite_matching(const BipartiteOptions& options,
                                       std::uint64_t seed);

// Sequential posted pricing. Element (i, c) = agent i offered price c, index
// i * (max_price + 1) + c.
struct PostedPricingOptions {
  int n_agents = 2;
  int max_price = 2;
  // Feasible sets of served agents; defaults to serving one agent.
  std::optional<Matroid> feasibility;
  // Per agent, probabilities of valuations 0..max_price. Empty means random.
  std::vector<std::vector<double>> valuations;
};

ProbingInstance gen_posted_pricing(const PostedPricingOptions& options,
                                   std::uint64_t seed);

struct RandomOptions {
  int size = 6;
  int k_in = 1;
  int k_out = 1;
  ObjectiveKind objective = ObjectiveKind::kLinear;
};

// Matroids drawn from {uniform, partition, graphic, explicit}, p in
// [0.1, 1]. Throws DomainError when k_out < 1.
ProbingInstance gen_random(const RandomOptions& options, std::uint64_t seed);

enum class GeneratorKind { kBipartiteMatching, kPostedPricing, kRandom };

const char* to_string(GeneratorKind kind);
// Accepts the canonical names and the short forms bipartite, pricing, random.
GeneratorKind parse_generator_kind(const std::string& name);
ObjectiveKind parse_objective_kind(const std::string& name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kRandom;
  std::uint64_t seed = 1;
  BipartiteOptions bipartite;
  PostedPricingOptions pricing;
  RandomOptions random;
};

ProbingInstance generate(const GeneratorSpec& spec);

Matroid random_matroid(int n, RandomStream& rng);
// A random basis family closed downward and axiom-checked with rejection;
// falls back to a random binary (GF(2)) matroid after repeated rejections.
Matroid random_explicit_matroid(int n, RandomStream& rng);
Objective random_objective(ObjectiveKind kind, int n, RandomStream& rng);

// Replaces every element i by `copies` parallel elements i * copies + c.
Matroid lift_matroid(const Matroid& m, int copies);

}  // namespace probekit

#endif  // PROBEKIT_GENERATORS_HPP_
