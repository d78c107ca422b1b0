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

#ifndef PROBEKIT_INSTANCE_HPP_
#define PROBEKIT_INSTANCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probekit/element_set.hpp"
#include "probekit/matroid.hpp"
#include "probekit/objective.hpp"

namespace probekit {

struct InstanceMetadata {
  std::string generator;  // empty for hand-written instances
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> parameters;
};

// A stochastic probing instance: element e is active independently with
// probability p[e]; probed sets must be independent in every outer matroid
// and taken (active) sets in every inner matroid.
struct ProbingInstance {
  int n = 0;
  std::vector<std::string> labels;  // optional, one per element
  std::vector<double> p;
  Objective objective;
  std::vector<Matroid> inner;
  std::vector<Matroid> outer;
  InstanceMetadata metadata;

  int k_in() const { return static_cast<int>(inner.size()); }
  int k_out() const { return static_cast<int>(outer.size()); }
  ElementSet ground() const { return ElementSet::full(n); }

  bool outer_feasible(ElementSet probed) const;
  bool inner_feasible(ElementSet taken) const;
};

// First broken instance invariant: at least one outer matroid, consistent
// ground sets, probabilities in [0,1], uncontracted matroids.
std::optional<std::string> validate(const ProbingInstance& inst);

// Throws DomainError with the message from validate.
void require_valid(const ProbingInstance& inst);

}  // namespace probekit

#endif  // PROBEKIT_INSTANCE_HPP_
