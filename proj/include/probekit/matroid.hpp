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

#ifndef PROBEKIT_MATROID_HPP_
#define PROBEKIT_MATROID_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "probekit/element_set.hpp"

namespace probekit {

enum class MatroidKind { kUniform, kPartition, kGraphic, kExplicit };

const char* to_string(MatroidKind kind);

struct UniformDefinition {
  int n = 0;
  int k = 0;
};

struct PartitionDefinition {
  std::vector<int> part_of;     // part index per element
  std::vector<int> capacities;  // capacity per part
};

struct GraphicDefinition {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // element i is edges[i]
};

struct ExplicitDefinition {
  int n = 0;
  std::vector<ElementSet> independent;  // sorted, unique
};

using MatroidDefinition = std::variant<UniformDefinition, PartitionDefinition,
                                       GraphicDefinition, ExplicitDefinition>;

// Ground sets up to this size get a precomputed rank table (2^n bytes), which
// makes independence and rank O(1).
inline constexpr int kRankTableMaxGround = 20;

// An immutable matroid over ground set {0..n-1}, optionally viewed through a
// contraction. The definition and rank table are shared between copies, so
// contraction is O(1) and values are safe to share across threads.
//
// A view with contracted set C has effective ground E - C, and S is
// independent iff S + C is independent in the base matroid.
class Matroid {
 public:
  static Matroid uniform(int n, int k);
  static Matroid free(int n) { return uniform(n, n); }
  static Matroid partition(std::vector<int> part_of,
                           std::vector<int> capacities);
  static Matroid graphic(int num_vertices,
                         std::vector<std::pair<int, int>> edges);
  // The family is taken as given and not axiom-checked; see verify_axioms.
  static Matroid explicit_family(int n, std::vector<ElementSet> independent);

  MatroidKind kind() const;
  const MatroidDefinition& definition() const;

  // Size of the base ground set, including contracted elements.
  int ground_size() const;
  // Effective ground set of this view.
  ElementSet ground() const;
  ElementSet contracted() const { return contracted_; }

  // Throws DomainError if `s` is not a subset of ground().
  bool is_independent(ElementSet s) const;
  int rank(ElementSet s) const;

  // M/e. Throws DomainError if e is outside the effective ground set or is a
  // loop of this view.
  Matroid contract(Element e) const;
  Matroid contract(ElementSet s) const;

  // Base matroid with the contraction dropped.
  Matroid base() const;

 private:
  struct Rep;
  explicit Matroid(std::shared_ptr<const Rep> rep);

  void check_subset(ElementSet s, const char* op) const;
  bool base_independent(ElementSet s) const;
  int base_rank(ElementSet s) const;

  std::shared_ptr<const Rep> rep_;
  ElementSet contracted_;

  friend class MatroidAccess;
};

// Unchecked oracle access for inner loops that have already validated their
// inputs.
class MatroidAccess {
 public:
  static bool independent(const Matroid& m, ElementSet s) {
    return m.base_independent(s | m.contracted_);
  }
  static int rank(const Matroid& m, ElementSet s) {
    return m.base_rank(s | m.contracted_) - m.contracted_.size();
  }
};

// Checks the matroid axioms on the effective ground set: the empty set is
// independent, independence is closed under subsets, and all maximal
// independent subsets of any set have the same size (equivalent to the
// exchange axiom). Returns a description of the first violation found.
// Throws CapabilityError above kRankTableMaxGround elements.
std::optional<std::string> verify_axioms(const Matroid& m);

// An assignment phi from `source` into `target` plus a bottom value.
class ExchangeMap {
 public:
  static constexpr Element kBottom = -1;

  ExchangeMap(ElementSet source, ElementSet target);

  ElementSet source() const { return source_; }
  ElementSet target() const { return target_; }

  // Throws DomainError if e is not in source().
  Element operator()(Element e) const;
  void assign(Element from, Element to);

 private:
  static constexpr std::int8_t kUnset = -2;
  ElementSet source_;
  ElementSet target_;
  std::array<std::int8_t, kMaxGroundSize> image_;
};

// Builds phi_{a,b}: identity on a & b, injective into b on non-bottom images,
// and for e in a - b either bottom with b + e independent or phi(e) with
// b - phi(e) + e independent. Elements with b + e independent are sent to
// bottom; the rest are matched into b - a by augmenting paths.
// Throws DomainError if a or b is dependent, InvariantError if no assignment
// exists.
ExchangeMap exchange_map(const Matroid& m, ElementSet a, ElementSet b);

// Verifies the three exchange-map conditions directly via is_independent.
std::optional<std::string> check_exchange_map(const Matroid& m,
                                              const ExchangeMap& phi);

}  // namespace probekit

#endif  // PROBEKIT_MATROID_HPP_
