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

#include "probekit/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "probekit/errors.hpp"

namespace probekit {

const char* to_string(MatroidKind kind) {
  switch (kind) {
    case MatroidKind::kUniform:
      return "uniform";
    case MatroidKind::kPartition:
      return "partition";
    case MatroidKind::kGraphic:
      return "graphic";
    case MatroidKind::kExplicit:
      return "explicit";
  }
  return "unknown";
}

struct Matroid::Rep {
  MatroidDefinition definition;
  int n = 0;
  std::unordered_set<std::uint32_t> explicit_members;
  // rank_table[mask] = size of a largest independent subset of mask.
  std::vector<std::uint8_t> rank_table;

  bool direct_independent(ElementSet s) const;
  int greedy_rank(ElementSet s) const;
  void build_rank_table();
};

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  // False if a and b were already connected.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

void check_ground_size(int n) {
  if (n < 0 || n > kMaxGroundSize) {
    throw DomainError("ground set size " + std::to_string(n) +
                      " outside [0, " + std::to_string(kMaxGroundSize) + "]");
  }
}

}  // namespace

bool Matroid::Rep::direct_independent(ElementSet s) const {
  return std::visit(
      [&](const auto& def) -> bool {
        using T = std::decay_t<decltype(def)>;
        if constexpr (std::is_same_v<T, UniformDefinition>) {
          return s.size() <= def.k;
        } else if constexpr (std::is_same_v<T, PartitionDefinition>) {
          std::vector<int> used(def.capacities.size(), 0);
          for (Element e : s) {
            const int part = def.part_of[e];
            if (++used[part] > def.capacities[part]) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, GraphicDefinition>) {
          UnionFind uf(def.num_vertices);
          for (Element e : s) {
            if (!uf.unite(def.edges[e].first, def.edges[e].second)) {
              return false;
            }
          }
          return true;
        } else {
          return explicit_members.count(s.bits()) > 0;
        }
      },
      definition);
}

int Matroid::Rep::greedy_rank(ElementSet s) const {
  ElementSet kept;
  for (Element e : s) {
    if (direct_independent(kept.with(e))) kept.insert(e);
  }
  return kept.size();
}

void Matroid::Rep::build_rank_table() {
  const std::uint32_t count = std::uint32_t{1} << n;
  rank_table.assign(count, 0);
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    const ElementSet s(mask);
    if (direct_independent(s)) {
      rank_table[mask] = static_cast<std::uint8_t>(s.size());
      continue;
    }
    std::uint8_t best = 0;
    for (Element e : s) {
      best = std::max(best, rank_table[s.without(e).bits()]);
    }
    rank_table[mask] = best;
  }
}

Matroid::Matroid(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

Matroid Matroid::uniform(int n, int k) {
  check_ground_size(n);
  if (k < 0) throw DomainError("uniform matroid rank must be nonnegative");
  auto rep = std::make_shared<Rep>();
  rep->definition = UniformDefinition{n, std::min(k, n)};
  rep->n = n;
  // Uniform rank is closed form; no table needed.
  return Matroid(std::move(rep));
}

Matroid Matroid::partition(std::vector<int> part_of,
                           std::vector<int> capacities) {
  const int n = static_cast<int>(part_of.size());
  check_ground_size(n);
  for (int part : part_of) {
    if (part < 0 || part >= static_cast<int>(capacities.size())) {
      throw DomainError("partition matroid: part index " +
                        std::to_string(part) + " out of range");
    }
  }
  for (int cap : capacities) {
    if (cap < 0) throw DomainError("partition matroid: negative capacity");
  }
  auto rep = std::make_shared<Rep>();
  rep->definition =
      PartitionDefinition{std::move(part_of), std::move(capacities)};
  rep->n = n;
  if (n <= kRankTableMaxGround) rep->build_rank_table();
  return Matroid(std::move(rep));
}

Matroid Matroid::graphic(int num_vertices,
                         std::vector<std::pair<int, int>> edges) {
  const int n = static_cast<int>(edges.size());
  check_ground_size(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
      throw DomainError("graphic matroid: edge endpoint out of range");
    }
  }
  auto rep = std::make_shared<Rep>();
  rep->definition = GraphicDefinition{num_vertices, std::move(edges)};
  rep->n = n;
  if (n <= kRankTableMaxGround) rep->build_rank_table();
  return Matroid(std::move(rep));
}

Matroid Matroid::explicit_family(int n, std::vector<ElementSet> independent) {
  check_ground_size(n);
  if (n > kRankTableMaxGround) {
    throw CapabilityError("explicit matroids are limited to " +
                          std::to_string(kRankTableMaxGround) + " elements");
  }
  const ElementSet ground = ElementSet::full(n);
  for (ElementSet s : independent) {
    if (!s.is_subset_of(ground)) {
      throw DomainError("explicit matroid: set " + s.to_string() +
                        " not contained in ground set");
    }
  }
  std::sort(independent.begin(), independent.end());
  independent.erase(std::unique(independent.begin(), independent.end()),
                    independent.end());
  auto rep = std::make_shared<Rep>();
  rep->n = n;
  for (ElementSet s : independent) rep->explicit_members.insert(s.bits());
  rep->definition = ExplicitDefinition{n, std::move(independent)};
  rep->build_rank_table();
  return Matroid(std::move(rep));
}

MatroidKind Matroid::kind() const {
  return static_cast<MatroidKind>(rep_->definition.index());
}

const MatroidDefinition& Matroid::definition() const {
  return rep_->definition;
}

int Matroid::ground_size() const { return rep_->n; }

ElementSet Matroid::ground() const {
  return ElementSet::full(rep_->n) - contracted_;
}

bool Matroid::base_independent(ElementSet s) const {
  if (const auto* u = std::get_if<UniformDefinition>(&rep_->definition)) {
    return s.size() <= u->k;
  }
  // The table reports rank 0 for the empty set even when a malformed
  // explicit family omits it.
  if (!rep_->rank_table.empty() && !s.empty()) {
    return rep_->rank_table[s.bits()] == s.size();
  }
  return rep_->direct_independent(s);
}

int Matroid::base_rank(ElementSet s) const {
  if (const auto* u = std::get_if<UniformDefinition>(&rep_->definition)) {
    return std::min(s.size(), u->k);
  }
  if (!rep_->rank_table.empty()) return rep_->rank_table[s.bits()];
  return rep_->greedy_rank(s);
}

void Matroid::check_subset(ElementSet s, const char* op) const {
  if (!s.is_subset_of(ground())) {
    throw DomainError(std::string(op) + ": set " + s.to_string() +
                      " not contained in effective ground set " +
                      ground().to_string());
  }
}

bool Matroid::is_independent(ElementSet s) const {
  check_subset(s, "is_independent");
  return base_independent(s | contracted_);
}

int Matroid::rank(ElementSet s) const {
  check_subset(s, "rank");
  return base_rank(s | contracted_) - contracted_.size();
}

Matroid Matroid::contract(Element e) const {
  if (e < 0 || e >= rep_->n || !ground().contains(e)) {
    throw DomainError("contract: element " + std::to_string(e) +
                      " not in effective ground set");
  }
  if (!base_independent(contracted_.with(e))) {
    throw DomainError("contract: element " + std::to_string(e) +
                      " is a loop");
  }
  Matroid out = *this;
  out.contracted_.insert(e);
  return out;
}

Matroid Matroid::contract(ElementSet s) const {
  Matroid out = *this;
  for (Element e : s) out = out.contract(e);
  return out;
}

Matroid Matroid::base() const { return Matroid(rep_); }

std::optional<std::string> verify_axioms(const Matroid& m) {
  const ElementSet ground = m.ground();
  if (m.ground_size() > kRankTableMaxGround) {
    throw CapabilityError("verify_axioms: ground set too large");
  }
  if (!m.is_independent(ElementSet{})) {
    return "empty set is not independent";
  }
  std::optional<std::string> violation;
  // Downward closure.
  for_each_subset(ground, [&](ElementSet s) {
    if (violation || !m.is_independent(s)) return;
    for (Element e : s) {
      if (!m.is_independent(s.without(e))) {
        violation = "not downward closed: " + s.to_string() +
                    " is independent but " + s.without(e).to_string() +
                    " is not";
        return;
      }
    }
  });
  if (violation) return violation;
  // For independent I let ext(I) be the elements that extend it. I is a
  // maximal independent subset of every X with I <= X <= E - ext(I), so all
  // maximal subsets have equal size iff rank(E - ext(I)) == |I| for all I.
  for_each_subset(ground, [&](ElementSet s) {
    if (violation || !m.is_independent(s)) return;
    ElementSet ext;
    for (Element e : ground - s) {
      if (m.is_independent(s.with(e))) ext.insert(e);
    }
    const ElementSet closure = ground - ext;
    if (m.rank(closure) == s.size()) return;
    // Witness: a larger independent set inside the closure.
    for_each_subset(closure, [&](ElementSet t) {
      if (violation || t.size() <= s.size() || !m.is_independent(t)) return;
      violation = "exchange axiom fails: A=" + s.to_string() +
                  " cannot be extended from B=" + t.to_string();
    });
  });
  return violation;
}

ExchangeMap::ExchangeMap(ElementSet source, ElementSet target)
    : source_(source), target_(target) {
  image_.fill(kUnset);
}

Element ExchangeMap::operator()(Element e) const {
  if (e < 0 || e >= kMaxGroundSize || !source_.contains(e)) {
    throw DomainError("exchange map: element " + std::to_string(e) +
                      " not in source set " + source_.to_string());
  }
  if (image_[e] == kUnset) {
    throw InvariantError("exchange map: element " + std::to_string(e) +
                         " has no assigned image");
  }
  return image_[e];
}

void ExchangeMap::assign(Element from, Element to) {
  image_[from] = static_cast<std::int8_t>(to);
}

namespace {

// Kuhn's augmenting path step for `left` over adjacency lists into right
// positions.
bool augment(int left, const std::vector<std::vector<int>>& adjacency,
             std::vector<int>& match_of_right, std::vector<bool>& visited) {
  for (int right : adjacency[left]) {
    if (visited[right]) continue;
    visited[right] = true;
    if (match_of_right[right] < 0 ||
        augment(match_of_right[right], adjacency, match_of_right, visited)) {
      match_of_right[right] = left;
      return true;
    }
  }
  return false;
}

}  // namespace

ExchangeMap exchange_map(const Matroid& m, ElementSet a, ElementSet b) {
  if (!m.is_independent(a)) {
    throw DomainError("exchange_map: source " + a.to_string() +
                      " is dependent");
  }
  if (!m.is_independent(b)) {
    throw DomainError("exchange_map: target " + b.to_string() +
                      " is dependent");
  }
  ExchangeMap phi(a, b);
  for (Element e : a & b) phi.assign(e, e);

  const std::vector<Element> right = (b - a).to_vector();
  std::vector<Element> left;
  std::vector<std::vector<int>> adjacency;
  for (Element e : a - b) {
    if (MatroidAccess::independent(m, b.with(e))) {
      phi.assign(e, ExchangeMap::kBottom);
      continue;
    }
    std::vector<int> options;
    for (int j = 0; j < static_cast<int>(right.size()); ++j) {
      if (MatroidAccess::independent(m, b.without(right[j]).with(e))) {
        options.push_back(j);
      }
    }
    left.push_back(e);
    adjacency.push_back(std::move(options));
  }

  std::vector<int> match_of_right(right.size(), -1);
  for (int i = 0; i < static_cast<int>(left.size()); ++i) {
    std::vector<bool> visited(right.size(), false);
    if (!augment(i, adjacency, match_of_right, visited)) {
      throw InvariantError("exchange_map: no valid assignment for A=" +
                           a.to_string() + " B=" + b.to_string());
    }
  }
  for (int j = 0; j < static_cast<int>(right.size()); ++j) {
    if (match_of_right[j] >= 0) phi.assign(left[match_of_right[j]], right[j]);
  }
  return phi;
}

std::optional<std::string> check_exchange_map(const Matroid& m,
                                              const ExchangeMap& phi) {
  const ElementSet a = phi.source();
  const ElementSet b = phi.target();
  if (!m.is_independent(a) || !m.is_independent(b)) {
    return "source or target is dependent";
  }
  ElementSet used;
  for (Element e : a) {
    Element f;
    try {
      f = phi(e);
    } catch (const std::exception& ex) {
      return std::string(ex.what());
    }
    const std::string where = "phi(" + std::to_string(e) + ")";
    if (b.contains(e)) {
      if (f != e) return where + " must fix common element";
    } else if (f == ExchangeMap::kBottom) {
      if (!m.is_independent(b.with(e))) {
        return where + " is bottom but B+e is dependent";
      }
      continue;
    } else {
      if (!b.contains(f)) return where + " is outside B";
      if (!m.is_independent(b.without(f).with(e))) {
        return where + " = " + std::to_string(f) +
               " but B-phi(e)+e is dependent";
      }
    }
    if (used.contains(f)) {
      return "element " + std::to_string(f) + " of B is hit twice";
    }
    used.insert(f);
  }
  return std::nullopt;
}

}  // namespace probekit
