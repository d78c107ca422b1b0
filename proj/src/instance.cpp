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

#include "probekit/instance.hpp"

#include <cmath>

#include "probekit/errors.hpp"

namespace probekit {

bool ProbingInstance::outer_feasible(ElementSet probed) const {
  for (const Matroid& m : outer) {
    if (!m.is_independent(probed)) return false;
  }
  return true;
}

bool ProbingInstance::inner_feasible(ElementSet taken) const {
  for (const Matroid& m : inner) {
    if (!m.is_independent(taken)) return false;
  }
  return true;
}

std::optional<std::string> validate(const ProbingInstance& inst) {
  if (inst.n < 0 || inst.n > kMaxGroundSize) {
    return "ground set size " + std::to_string(inst.n) + " out of range";
  }
  if (inst.outer.empty()) return "at least one outer matroid is required";
  if (static_cast<int>(inst.p.size()) != inst.n) {
    return "expected " + std::to_string(inst.n) + " probabilities, got " +
           std::to_string(inst.p.size());
  }
  for (int e = 0; e < inst.n; ++e) {
    if (!(inst.p[e] >= 0.0 && inst.p[e] <= 1.0)) {
      return "probability of element " + std::to_string(e) +
             " outside [0,1]";
    }
  }
  if (!inst.labels.empty() && static_cast<int>(inst.labels.size()) != inst.n) {
    return "label count does not match ground set";
  }
  if (inst.objective.ground_size() != inst.n) {
    return "objective ground set has " +
           std::to_string(inst.objective.ground_size()) + " elements, expected " +
           std::to_string(inst.n);
  }
  auto check = [&](const std::vector<Matroid>& ms,
                   const char* side) -> std::optional<std::string> {
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (ms[j].ground_size() != inst.n) {
        return std::string(side) + " matroid " + std::to_string(j) +
               " has a different ground set";
      }
      if (!ms[j].contracted().empty()) {
        return std::string(side) + " matroid " + std::to_string(j) +
               " is contracted";
      }
    }
    return std::nullopt;
  };
  if (auto v = check(inst.inner, "inner")) return v;
  if (auto v = check(inst.outer, "outer")) return v;
  return std::nullopt;
}

void require_valid(const ProbingInstance& inst) {
  if (auto v = validate(inst)) throw DomainError("invalid instance: " + *v);
}

}  // namespace probekit
