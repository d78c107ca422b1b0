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

#include "probekit/serialization.hpp"

#include <fstream>
#include <sstream>

#include "probekit/errors.hpp"

namespace probekit {

namespace {

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string(where) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key, const char* where) {
  try {
    return field(j, key, where).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string(where) + ": bad field '" + key +
                      "': " + e.what());
  }
}

Json set_to_json(ElementSet s) { return Json(s.to_vector()); }

ElementSet set_from_json(const Json& j, int n, const char* where) {
  ElementSet s;
  if (!j.is_array()) throw DomainError(std::string(where) + ": set must be a list");
  for (const Json& e : j) {
    if (!e.is_number_integer()) {
      throw DomainError(std::string(where) + ": set elements must be integers");
    }
    const int v = e.get<int>();
    if (v < 0 || v >= n) {
      throw DomainError(std::string(where) + ": element " + std::to_string(v) +
                        " outside ground set");
    }
    s.insert(v);
  }
  return s;
}

}  // namespace

Json matroid_to_json(const Matroid& m) {
  if (!m.contracted().empty()) {
    throw DomainError("matroid_to_json: contracted view");
  }
  Json j;
  j["kind"] = to_string(m.kind());
  std::visit(
      [&](const auto& def) {
        using T = std::decay_t<decltype(def)>;
        if constexpr (std::is_same_v<T, UniformDefinition>) {
          j["n"] = def.n;
          j["k"] = def.k;
        } else if constexpr (std::is_same_v<T, PartitionDefinition>) {
          j["part_of"] = def.part_of;
          j["capacities"] = def.capacities;
        } else if constexpr (std::is_same_v<T, GraphicDefinition>) {
          j["vertices"] = def.num_vertices;
          Json edges = Json::array();
          for (const auto& [u, v] : def.edges) edges.push_back({u, v});
          j["edges"] = edges;
        } else {
          j["n"] = def.n;
          Json sets = Json::array();
          for (ElementSet s : def.independent) sets.push_back(set_to_json(s));
          j["independent"] = sets;
        }
      },
      m.definition());
  return j;
}

Matroid matroid_from_json(const Json& j) {
  const std::string kind = get<std::string>(j, "kind", "matroid");
  if (kind == "uniform") {
    return Matroid::uniform(get<int>(j, "n", "uniform matroid"),
                            get<int>(j, "k", "uniform matroid"));
  }
  if (kind == "partition") {
    return Matroid::partition(
        get<std::vector<int>>(j, "part_of", "partition matroid"),
        get<std::vector<int>>(j, "capacities", "partition matroid"));
  }
  if (kind == "graphic") {
    return Matroid::graphic(
        get<int>(j, "vertices", "graphic matroid"),
        get<std::vector<std::pair<int, int>>>(j, "edges", "graphic matroid"));
  }
  if (kind == "explicit") {
    const int n = get<int>(j, "n", "explicit matroid");
    if (n < 0 || n > kRankTableMaxGround) {
      throw DomainError("explicit matroid: n out of range");
    }
    std::vector<ElementSet> sets;
    for (const Json& s : field(j, "independent", "explicit matroid")) {
      sets.push_back(set_from_json(s, n, "explicit matroid"));
    }
    return Matroid::explicit_family(n, std::move(sets));
  }
  throw DomainError("matroid: unknown kind '" + kind + "'");
}

Json objective_to_json(const Objective& f) {
  Json j;
  j["kind"] = to_string(f.kind());
  std::visit(
      [&](const auto& def) {
        using T = std::decay_t<decltype(def)>;
        if constexpr (std::is_same_v<T, LinearDefinition>) {
          j["weights"] = def.weights;
        } else if constexpr (std::is_same_v<T, CoverageDefinition>) {
          j["covers"] = def.covers;
          j["item_weights"] = def.item_weights;
        } else {
          j["matroid"] = matroid_to_json(def.matroid);
          j["weights"] = def.weights;
        }
      },
      f.definition());
  return j;
}

Objective objective_from_json(const Json& j) {
  const std::string kind = get<std::string>(j, "kind", "objective");
  if (kind == "linear") {
    return Objective::linear(get<std::vector<double>>(j, "weights", "linear"));
  }
  if (kind == "coverage") {
    return Objective::coverage(
        get<std::vector<std::vector<int>>>(j, "covers", "coverage"),
        get<std::vector<double>>(j, "item_weights", "coverage"));
  }
  if (kind == "weighted_matroid_rank") {
    return Objective::weighted_matroid_rank(
        matroid_from_json(field(j, "matroid", "weighted_matroid_rank")),
        get<std::vector<double>>(j, "weights", "weighted_matroid_rank"));
  }
  throw DomainError("objective: unknown kind '" + kind + "'");
}

Json instance_to_json(const ProbingInstance& inst,
                      const std::optional<std::vector<double>>& x0) {
  Json j;
  j["ground"] = inst.n;
  if (!inst.labels.empty()) j["labels"] = inst.labels;
  j["p"] = inst.p;
  j["objective"] = objective_to_json(inst.objective);
  j["inner"] = Json::array();
  for (const Matroid& m : inst.inner) j["inner"].push_back(matroid_to_json(m));
  j["outer"] = Json::array();
  for (const Matroid& m : inst.outer) j["outer"].push_back(matroid_to_json(m));
  Json meta;
  meta["generator"] = inst.metadata.generator;
  meta["seed"] = inst.metadata.seed;
  Json params = Json::object();
  for (const auto& [k, v] : inst.metadata.parameters) params[k] = v;
  meta["parameters"] = params;
  j["metadata"] = meta;
  if (x0) j["x0"] = *x0;
  return j;
}

InstanceFile instance_from_json(const Json& j) {
  InstanceFile out;
  ProbingInstance& inst = out.instance;
  inst.n = get<int>(j, "ground", "instance");
  if (inst.n < 0 || inst.n > kMaxGroundSize) {
    throw DomainError("instance: ground size out of range");
  }
  if (j.contains("labels")) {
    inst.labels = get<std::vector<std::string>>(j, "labels", "instance");
  }
  inst.p = get<std::vector<double>>(j, "p", "instance");
  inst.objective = objective_from_json(field(j, "objective", "instance"));
  for (const Json& m : field(j, "inner", "instance")) {
    inst.inner.push_back(matroid_from_json(m));
  }
  for (const Json& m : field(j, "outer", "instance")) {
    inst.outer.push_back(matroid_from_json(m));
  }
  if (j.contains("metadata")) {
    const Json& meta = j.at("metadata");
    if (meta.contains("generator")) {
      inst.metadata.generator = get<std::string>(meta, "generator", "metadata");
    }
    if (meta.contains("seed")) {
      inst.metadata.seed = get<std::uint64_t>(meta, "seed", "metadata");
    }
    if (meta.contains("parameters")) {
      for (const auto& [k, v] : meta.at("parameters").items()) {
        if (!v.is_number()) throw DomainError("metadata: parameters must be numbers");
        inst.metadata.parameters.emplace_back(k, v.get<double>());
      }
    }
  }
  if (j.contains("x0")) {
    out.x0 = get<std::vector<double>>(j, "x0", "instance");
    if (static_cast<int>(out.x0->size()) != inst.n) {
      throw DomainError("instance: x0 must have one entry per element");
    }
  }
  require_valid(inst);
  return out;
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open instance file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("instance file '" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

void save_instance_file(const std::string& path, const ProbingInstance& inst,
                        const std::optional<std::vector<double>>& x0) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << instance_to_json(inst, x0).dump(2) << "\n";
}

}  // namespace probekit
