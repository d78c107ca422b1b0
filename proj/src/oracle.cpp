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

#include "probekit/oracle.hpp"

#include <cmath>
#include <limits>

#include "probekit/errors.hpp"

namespace probekit {

namespace {

class AdaptiveDp {
 public:
  explicit AdaptiveDp(const ProbingInstance& inst) : inst_(inst) {
    require_valid(inst);
    if (inst.n > kOracleMaxGround) {
      throw CapabilityError("optimal_adaptive_value: universe of size " +
                            std::to_string(inst.n) + " exceeds oracle limit " +
                            std::to_string(kOracleMaxGround));
    }
    pow3_.resize(static_cast<std::size_t>(inst.n));
    std::size_t states = 1;
    for (int e = 0; e < inst.n; ++e) {
      pow3_[e] = states;
      states *= 3;
    }
    memo_.assign(states, std::numeric_limits<double>::quiet_NaN());
  }

  double value(ElementSet probed, ElementSet taken, std::size_t code) {
    double& slot = memo_[code];
    if (!std::isnan(slot)) return slot;
    double best = inst_.objective.value(taken);
    for (Element e : inst_.ground() - probed) {
      if (!feasible(probed, taken, e)) continue;
      const double p = inst_.p[e];
      double v = 0.0;
      if (p > 0.0) {
        v += p * value(probed.with(e), taken.with(e), code + 2 * pow3_[e]);
      }
      if (p < 1.0) {
        v += (1.0 - p) * value(probed.with(e), taken, code + pow3_[e]);
      }
      best = std::max(best, v);
    }
    slot = best;
    return best;
  }

  // Rebuilds an optimal tree by re-running the argmax at each node.
  int build(ElementSet probed, ElementSet taken, std::size_t code,
            DecisionTree& tree) {
    const double stop = inst_.objective.value(taken);
    Element choice = -1;
    double best = stop;
    for (Element e : inst_.ground() - probed) {
      if (!feasible(probed, taken, e)) continue;
      const double p = inst_.p[e];
      double v = 0.0;
      if (p > 0.0) {
        v += p * value(probed.with(e), taken.with(e), code + 2 * pow3_[e]);
      }
      if (p < 1.0) {
        v += (1.0 - p) * value(probed.with(e), taken, code + pow3_[e]);
      }
      if (v > best + 1e-12) {
        best = v;
        choice = e;
      }
    }
    if (choice < 0) return -1;
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({choice, -1, -1});
    const int on_active = build(probed.with(choice), taken.with(choice),
                                code + 2 * pow3_[choice], tree);
    const int on_inactive =
        build(probed.with(choice), taken, code + pow3_[choice], tree);
    tree.nodes[index].on_active = on_active;
    tree.nodes[index].on_inactive = on_inactive;
    return index;
  }

 private:
  bool feasible(ElementSet probed, ElementSet taken, Element e) const {
    return inst_.outer_feasible(probed.with(e)) &&
           inst_.inner_feasible(taken.with(e));
  }

  const ProbingInstance& inst_;
  std::vector<std::size_t> pow3_;
  std::vector<double> memo_;
};

void walk(const ProbingInstance& inst, const DecisionTree& tree, int node,
          ElementSet probed, ElementSet taken, double weight, double& value,
          std::vector<double>* marginals) {
  if (node < 0) {
    value += weight * inst.objective.value(taken);
    return;
  }
  if (node >= static_cast<int>(tree.nodes.size())) {
    throw DomainError("policy tree: child index out of range");
  }
  const DecisionTree::Node& n = tree.nodes[node];
  if (n.probe < 0) {
    value += weight * inst.objective.value(taken);
    return;
  }
  const Element e = n.probe;
  if (e >= inst.n) throw DomainError("policy tree: element out of range");
  if (probed.contains(e)) {
    throw DomainError("policy tree probes element " + std::to_string(e) +
                      " twice");
  }
  if (!inst.outer_feasible(probed.with(e))) {
    throw DomainError("policy tree: probing " + std::to_string(e) +
                      " violates outer constraints");
  }
  if (!inst.inner_feasible(taken.with(e))) {
    throw DomainError("policy tree: taking " + std::to_string(e) +
                      " would violate inner constraints");
  }
  if (marginals != nullptr) (*marginals)[e] += weight;
  const double p = inst.p[e];
  walk(inst, tree, n.on_active, probed.with(e), taken.with(e), weight * p,
       value, marginals);
  walk(inst, tree, n.on_inactive, probed.with(e), taken, weight * (1.0 - p),
       value, marginals);
}

}  // namespace

double optimal_adaptive_value(const ProbingInstance& inst) {
  AdaptiveDp dp(inst);
  return dp.value({}, {}, 0);
}

DecisionTree optimal_policy_tree(const ProbingInstance& inst) {
  AdaptiveDp dp(inst);
  DecisionTree tree;
  tree.root = dp.build({}, {}, 0, tree);
  return tree;
}

double policy_value_exact(const ProbingInstance& inst,
                          const DecisionTree& tree) {
  require_valid(inst);
  double value = 0.0;
  walk(inst, tree, tree.root, {}, {}, 1.0, value, nullptr);
  return value;
}

std::vector<double> probe_marginals(const ProbingInstance& inst,
                                    const DecisionTree& tree) {
  require_valid(inst);
  double value = 0.0;
  std::vector<double> marginals(static_cast<std::size_t>(inst.n), 0.0);
  walk(inst, tree, tree.root, {}, {}, 1.0, value, &marginals);
  return marginals;
}

}  // namespace probekit
