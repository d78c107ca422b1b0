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

#include "probekit/generators.hpp"

#include <algorithm>
#include <numeric>

#include "probekit/errors.hpp"

namespace probekit {

namespace {

ElementSet random_subset_of_size(int n, int k, RandomStream& rng) {
  std::vector<Element> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < k; ++i) {
    std::swap(order[i], order[i + rng.below(n - i)]);
  }
  ElementSet s;
  for (int i = 0; i < k; ++i) s.insert(order[i]);
  return s;
}

Matroid binary_matroid(int n, int rank, RandomStream& rng) {
  std::vector<std::uint32_t> columns(static_cast<std::size_t>(n));
  for (auto& c : columns) {
    c = static_cast<std::uint32_t>(rng.below(1 << rank));
  }
  std::vector<ElementSet> independent;
  for_each_subset(ElementSet::full(n), [&](ElementSet s) {
    // Gaussian elimination over GF(2) on bitmask rows.
    std::vector<std::uint32_t> pivots;
    for (Element e : s) {
      std::uint32_t v = columns[e];
      for (std::uint32_t p : pivots) v = std::min(v, v ^ p);
      if (v == 0) return;
      pivots.push_back(v);
      std::sort(pivots.rbegin(), pivots.rend());
    }
    independent.push_back(s);
  });
  return Matroid::explicit_family(n, std::move(independent));
}

std::vector<double> random_weights(int n, double lo, double hi,
                                   RandomStream& rng) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (double& v : w) v = rng.uniform(lo, hi);
  return w;
}

}  // namespace

Matroid random_explicit_matroid(int n, RandomStream& rng) {
  if (n > 12) throw CapabilityError("random explicit matroids limited to 12");
  const int rank = n == 0 ? 0 : 1 + rng.below(std::min(n, 4));
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int bases = 1 + rng.below(4);
    std::vector<ElementSet> family;
    for (int b = 0; b < bases; ++b) {
      for_each_subset(random_subset_of_size(n, rank, rng),
                      [&](ElementSet s) { family.push_back(s); });
    }
    Matroid m = Matroid::explicit_family(n, std::move(family));
    if (!verify_axioms(m)) return m;
  }
  return binary_matroid(n, std::max(rank, 1), rng);
}

Matroid random_matroid(int n, RandomStream& rng) {
  // Explicit families are enumerated, so only small grounds get them.
  switch (rng.below(n <= 12 ? 4 : 3)) {
    case 0:
      return Matroid::uniform(n, n == 0 ? 0 : 1 + rng.below(n));
    case 1: {
      const int parts = n == 0 ? 1 : 1 + rng.below(n);
      std::vector<int> part_of(static_cast<std::size_t>(n));
      std::vector<int> sizes(static_cast<std::size_t>(parts), 0);
      for (int& part : part_of) {
        part = rng.below(parts);
        ++sizes[part];
      }
      std::vector<int> caps(static_cast<std::size_t>(parts));
      for (int j = 0; j < parts; ++j) {
        caps[j] = sizes[j] == 0 ? 1 : 1 + rng.below(sizes[j]);
      }
      return Matroid::partition(std::move(part_of), std::move(caps));
    }
    case 2: {
      const int vertices = 2 + rng.below(std::max(1, n));
      std::vector<std::pair<int, int>> edges;
      for (int e = 0; e < n; ++e) {
        const int u = rng.below(vertices);
        int v = rng.below(vertices - 1);
        if (v >= u) ++v;
        edges.emplace_back(u, v);
      }
      return Matroid::graphic(vertices, std::move(edges));
    }
    default:
      return random_explicit_matroid(n, rng);
  }
}

Objective random_objective(ObjectiveKind kind, int n, RandomStream& rng) {
  switch (kind) {
    case ObjectiveKind::kLinear:
      return Objective::linear(random_weights(n, 0.0, 1.0, rng));
    case ObjectiveKind::kCoverage: {
      const int items = std::max(1, n);
      std::vector<std::vector<int>> covers(static_cast<std::size_t>(n));
      for (auto& c : covers) {
        const int count = 1 + rng.below(std::min(3, items));
        c = random_subset_of_size(items, count, rng).to_vector();
      }
      return Objective::coverage(std::move(covers),
                                 random_weights(items, 0.1, 1.0, rng));
    }
    case ObjectiveKind::kWeightedMatroidRank: {
      Matroid m = random_matroid(n, rng);
      return Objective::weighted_matroid_rank(std::move(m),
                                              random_weights(n, 0.0, 1.0, rng));
    }
  }
  throw DomainError("unknown objective kind");
}

Matroid lift_matroid(const Matroid& m, int copies) {
  if (copies < 1) throw DomainError("lift_matroid: copies must be >= 1");
  if (!m.contracted().empty()) {
    throw DomainError("lift_matroid: matroid must be uncontracted");
  }
  const int n = m.ground_size();
  const int lifted = n * copies;
  if (const auto* u = std::get_if<UniformDefinition>(&m.definition())) {
    if (u->k <= 1) return Matroid::uniform(lifted, u->k);
  }
  if (const auto* g = std::get_if<GraphicDefinition>(&m.definition())) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& edge : g->edges) {
      for (int c = 0; c < copies; ++c) edges.push_back(edge);
    }
    return Matroid::graphic(g->num_vertices, std::move(edges));
  }
  if (lifted > kRankTableMaxGround) {
    throw CapabilityError("lift_matroid: lifted ground set too large");
  }
  std::vector<ElementSet> independent;
  for_each_subset(ElementSet::full(lifted), [&](ElementSet s) {
    ElementSet agents;
    for (Element e : s) {
      const int agent = e / copies;
      if (agents.contains(agent)) return;
      agents.insert(agent);
    }
    if (m.is_independent(agents)) independent.push_back(s);
  });
  return Matroid::explicit_family(lifted, std::move(independent));
}

ProbingInstance gen_bipartite_matching(const BipartiteOptions& options,
                                       std::uint64_t seed) {
  RandomStream rng(seed);
  const int vertices = options.n_left + options.n_right;
  std::vector<int> patience = options.patience;
  if (patience.empty()) patience.assign(static_cast<std::size_t>(vertices), 1);
  if (static_cast<int>(patience.size()) != vertices) {
    throw DomainError("bipartite generator: one patience value per vertex");
  }
  for (int t : patience) {
    if (t < 1) throw DomainError("bipartite generator: patience must be >= 1");
  }
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  for (int u = 0; u < options.n_left; ++u) {
    for (int v = 0; v < options.n_right; ++v) {
      if (options.density >= 1.0 || rng.bernoulli(options.density)) {
        edges.emplace_back(u, options.n_left + v);
        labels.push_back("u" + std::to_string(u) + "-v" + std::to_string(v));
      }
    }
  }
  const int n = static_cast<int>(edges.size());
  if (n > kMaxGroundSize) throw DomainError("bipartite generator: too many edges");

  ProbingInstance inst;
  inst.n = n;
  inst.labels = std::move(labels);
  for (int e = 0; e < n; ++e) {
    inst.p.push_back(options.edge_prob >= 0.0 ? options.edge_prob
                                              : rng.uniform(0.1, 1.0));
  }
  std::vector<int> left_part, right_part;
  for (const auto& [u, v] : edges) {
    left_part.push_back(u);
    right_part.push_back(v - options.n_left);
  }
  const std::vector<int> ones_left(static_cast<std::size_t>(options.n_left), 1);
  const std::vector<int> ones_right(static_cast<std::size_t>(options.n_right), 1);
  inst.inner.push_back(Matroid::partition(left_part, ones_left));
  inst.inner.push_back(Matroid::partition(right_part, ones_right));
  inst.outer.push_back(Matroid::partition(
      left_part, std::vector<int>(patience.begin(),
                                  patience.begin() + options.n_left)));
  inst.outer.push_back(Matroid::partition(
      right_part,
      std::vector<int>(patience.begin() + options.n_left, patience.end())));

  if (options.objective == ObjectiveKind::kLinear) {
    inst.objective = Objective::linear(
        options.unit_weights ? std::vector<double>(static_cast<std::size_t>(n), 1.0)
                             : random_weights(n, 0.1, 1.0, rng));
  } else if (options.objective == ObjectiveKind::kCoverage) {
    // Each edge covers its endpoints plus one random shared "interest" item.
    const int interests = std::max(1, vertices / 2);
    std::vector<std::vector<int>> covers;
    for (const auto& [u, v] : edges) {
      covers.push_back({u, v, vertices + rng.below(interests)});
    }
    inst.objective = Objective::coverage(
        std::move(covers), random_weights(vertices + interests, 0.1, 1.0, rng));
  } else {
    inst.objective = random_objective(options.objective, n, rng);
  }
  inst.metadata.generator = "stochastic_matching_bipartite";
  inst.metadata.seed = seed;
  inst.metadata.parameters = {{"n_left", double(options.n_left)},
                              {"n_right", double(options.n_right)},
                              {"edge_prob", options.edge_prob},
                              {"density", options.density}};
  return inst;
}

ProbingInstance gen_posted_pricing(const PostedPricingOptions& options,
                                   std::uint64_t seed) {
  RandomStream rng(seed);
  const int agents = options.n_agents;
  const int levels = options.max_price + 1;
  if (agents < 1 || options.max_price < 0) {
    throw DomainError("posted pricing generator: need agents >= 1, B >= 0");
  }
  const int n = agents * levels;
  if (n > kMaxGroundSize) {
    throw DomainError("posted pricing generator: too many offers");
  }
  std::vector<std::vector<double>> valuations = options.valuations;
  if (valuations.empty()) {
    for (int i = 0; i < agents; ++i) {
      std::vector<double> pmf = random_weights(levels, 0.05, 1.0, rng);
      const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
      for (double& v : pmf) v /= total;
      valuations.push_back(std::move(pmf));
    }
  }
  if (static_cast<int>(valuations.size()) != agents) {
    throw DomainError("posted pricing generator: one distribution per agent");
  }
  const Matroid feasibility =
      options.feasibility ? *options.feasibility : Matroid::uniform(agents, 1);
  if (feasibility.ground_size() != agents) {
    throw DomainError("posted pricing generator: feasibility matroid size");
  }

  ProbingInstance inst;
  inst.n = n;
  std::vector<double> weights;
  std::vector<int> agent_of;
  for (int i = 0; i < agents; ++i) {
    if (static_cast<int>(valuations[i].size()) != levels) {
      throw DomainError("posted pricing generator: distribution over 0..B");
    }
    for (int c = 0; c < levels; ++c) {
      // P[v_i >= c]
      double tail = 0.0;
      for (int v = c; v < levels; ++v) tail += valuations[i][v];
      inst.p.push_back(std::clamp(tail, 0.0, 1.0));
      weights.push_back(c);
      agent_of.push_back(i);
      inst.labels.push_back("a" + std::to_string(i) + "@" + std::to_string(c));
    }
  }
  inst.objective = Objective::linear(std::move(weights));
  inst.outer.push_back(Matroid::partition(
      agent_of, std::vector<int>(static_cast<std::size_t>(agents), 1)));
  inst.inner.push_back(lift_matroid(feasibility, levels));
  inst.metadata.generator = "posted_pricing";
  inst.metadata.seed = seed;
  inst.metadata.parameters = {{"n_agents", double(agents)},
                              {"max_price", double(options.max_price)}};
  return inst;
}

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kBipartiteMatching:
      return "stochastic_matching_bipartite";
    case GeneratorKind::kPostedPricing:
      return "posted_pricing";
    case GeneratorKind::kRandom:
      return "random_matroid_probing";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "stochastic_matching_bipartite" || name == "bipartite") {
    return GeneratorKind::kBipartiteMatching;
  }
  if (name == "posted_pricing" || name == "pricing") {
    return GeneratorKind::kPostedPricing;
  }
  if (name == "random_matroid_probing" || name == "random") {
    return GeneratorKind::kRandom;
  }
  throw DomainError("unknown generator '" + name + "'");
}

ObjectiveKind parse_objective_kind(const std::string& name) {
  if (name == "linear") return ObjectiveKind::kLinear;
  if (name == "coverage") return ObjectiveKind::kCoverage;
  if (name == "weighted_matroid_rank" || name == "rank") {
    return ObjectiveKind::kWeightedMatroidRank;
  }
  throw DomainError("unknown objective kind '" + name + "'");
}

ProbingInstance generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::kBipartiteMatching:
      return gen_bipartite_matching(spec.bipartite, spec.seed);
    case GeneratorKind::kPostedPricing:
      return gen_posted_pricing(spec.pricing, spec.seed);
    case GeneratorKind::kRandom:
      return gen_random(spec.random, spec.seed);
  }
  throw DomainError("unknown generator kind");
}

ProbingInstance gen_random(const RandomOptions& options, std::uint64_t seed) {
  if (options.k_out < 1) {
    throw DomainError("random generator: at least one outer matroid required");
  }
  if (options.k_in < 0) throw DomainError("random generator: k_in < 0");
  if (options.size < 0 || options.size > kMaxGroundSize) {
    throw DomainError("random generator: size out of range");
  }
  RandomStream rng(seed);
  ProbingInstance inst;
  inst.n = options.size;
  // Redraw matroids until at least half of the elements are usable in all
  // of them; pure loop-heavy draws give empty instances.
  for (int attempt = 0;; ++attempt) {
    inst.p = random_weights(options.size, 0.1, 1.0, rng);
    inst.inner.clear();
    inst.outer.clear();
    for (int j = 0; j < options.k_in; ++j) {
      inst.inner.push_back(random_matroid(options.size, rng));
    }
    for (int j = 0; j < options.k_out; ++j) {
      inst.outer.push_back(random_matroid(options.size, rng));
    }
    int usable = 0;
    for (Element e = 0; e < options.size; ++e) {
      bool ok = true;
      for (const Matroid& m : inst.inner) ok = ok && m.is_independent({e});
      for (const Matroid& m : inst.outer) ok = ok && m.is_independent({e});
      usable += ok;
    }
    if (2 * usable >= options.size || attempt >= 1000) break;
  }
  inst.objective = random_objective(options.objective, options.size, rng);
  inst.metadata.generator = "random_matroid_probing";
  inst.metadata.seed = seed;
  inst.metadata.parameters = {{"size", double(options.size)},
                              {"k_in", double(options.k_in)},
                              {"k_out", double(options.k_out)}};
  return inst;
}

}  // namespace probekit
