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

#ifndef PROBEKIT_ORACLE_HPP_
#define PROBEKIT_ORACLE_HPP_

#include <vector>

#include "probekit/element_set.hpp"
#include "probekit/instance.hpp"

namespace probekit {

// States are (Q, S) pairs, 3^n of them.
inline constexpr int kOracleMaxGround = 12;

// Adaptive policy as a decision tree. A node either stops (probe < 0) or
// probes an element and branches on its outcome. Children index `nodes`;
// -1 means stop. An empty tree stops immediately.
struct DecisionTree {
  struct Node {
    Element probe = -1;
    int on_active = -1;
    int on_inactive = -1;
  };
  std::vector<Node> nodes;
  int root = -1;
};

// E[OPT]: value of the best adaptive policy by memoized dynamic programming
// over (probed, taken) states. A probe is allowed only if both the probed and
// the taken set stay feasible should it succeed; stopping is always allowed.
// Throws CapabilityError above kOracleMaxGround elements.
double optimal_adaptive_value(const ProbingInstance& inst);

// An optimal tree recovered from the same recursion.
DecisionTree optimal_policy_tree(const ProbingInstance& inst);

// Exact expected value of a tree. Throws DomainError if the tree probes an
// element twice or takes an infeasible action.
double policy_value_exact(const ProbingInstance& inst,
                          const DecisionTree& tree);

// Probability that the tree probes each element.
std::vector<double> probe_marginals(const ProbingInstance& inst,
                                    const DecisionTree& tree);

}  // namespace probekit

#endif  // PROBEKIT_ORACLE_HPP_
