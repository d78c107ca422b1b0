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

#ifndef PROBEKIT_SERIALIZATION_HPP_
#define PROBEKIT_SERIALIZATION_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "probekit/instance.hpp"
#include "probekit/matroid.hpp"
#include "probekit/objective.hpp"

namespace probekit {

using Json = nlohmann::json;

// Contracted views are not serializable; only base matroids are written.
Json matroid_to_json(const Matroid& m);
Matroid matroid_from_json(const Json& j);

Json objective_to_json(const Objective& f);
Objective objective_from_json(const Json& j);

// {ground, labels?, p, objective, inner, outer, metadata, x0?}
struct InstanceFile {
  ProbingInstance instance;
  std::optional<std::vector<double>> x0;
};

Json instance_to_json(const ProbingInstance& inst,
                      const std::optional<std::vector<double>>& x0 = {});
// Structural parse only: shape errors and broken instance invariants throw
// DomainError. Matroid axioms are not checked here.
InstanceFile instance_from_json(const Json& j);

InstanceFile load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const ProbingInstance& inst,
                        const std::optional<std::vector<double>>& x0 = {});

}  // namespace probekit

#endif  // PROBEKIT_SERIALIZATION_HPP_
