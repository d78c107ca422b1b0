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

#include "probekit/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "probekit/errors.hpp"
#include "probekit/lp.hpp"

namespace probekit {

namespace {

// Loads and ranks of every subset of `support`, indexed by compressed
// subset index k (bit i of k selects elements[i]).
struct SubsetTable {
  std::vector<Element> elements;
  std::vector<ElementSet> sets;
  std::vector<double> load;
  std::vector<int> rank;
};

SubsetTable tabulate(const Matroid& m, ElementSet support,
                     const FractionalPoint& x) {
  SubsetTable t;
  t.elements = support.to_vector();
  const std::size_t count = std::size_t{1} << t.elements.size();
  t.sets.resize(count);
  t.load.resize(count);
  t.rank.resize(count);
  t.sets[0] = ElementSet{};
  t.load[0] = 0.0;
  t.rank[0] = 0;
  for (std::size_t k = 1; k < count; ++k) {
    const std::size_t rest = k & (k - 1);
    const Element e = t.elements[std::countr_zero(k)];
    t.sets[k] = t.sets[rest].with(e);
    t.load[k] = t.load[rest] + x[e];
    t.rank[k] = MatroidAccess::rank(m, t.sets[k]);
  }
  return t;
}

void check_dimension(const Matroid& m, const FractionalPoint& x,
                     const char* op) {
  if (static_cast<int>(x.size()) != m.ground_size()) {
    throw DomainError(std::string(op) + ": point has dimension " +
                      std::to_string(x.size()) + ", matroid has " +
                      std::to_string(m.ground_size()) + " elements");
  }
}

ElementSet positive_support(const FractionalPoint& x, double threshold) {
  ElementSet s;
  for (int e = 0; e < static_cast<int>(x.size()); ++e) {
    if (x[e] > threshold) s.insert(e);
  }
  return s;
}

void check_support_size(ElementSet support, const char* op) {
  if (support.size() > kEnumerationMaxSupport) {
    throw CapabilityError(std::string(op) + ": support of size " +
                          std::to_string(support.size()) +
                          " exceeds enumeration limit " +
                          std::to_string(kEnumerationMaxSupport));
  }
}

// Merges equal sets, drops dust weights and renormalizes.
std::vector<DecompositionTerm> normalize_terms(
    std::vector<DecompositionTerm> terms) {
  std::map<ElementSet, double> merged;
  std::vector<ElementSet> order;
  for (const auto& term : terms) {
    auto [it, inserted] = merged.emplace(term.set, 0.0);
    if (inserted) order.push_back(term.set);
    it->second += term.weight;
  }
  std::vector<DecompositionTerm> out;
  double total = 0.0;
  for (ElementSet s : order) {
    const double w = merged[s];
    if (w < kSnapTolerance) continue;
    out.push_back({w, s});
    total += w;
  }
  if (total > 0.0) {
    for (auto& term : out) term.weight /= total;
  }
  return out;
}

}  // namespace

std::string PolytopeViolation::describe() const {
  return "sum of x over " + set.to_string() + " is " + std::to_string(load) +
         " > rank " + std::to_string(rank);
}

std::optional<PolytopeViolation> polytope_violation(const Matroid& m,
                                                    const FractionalPoint& x,
                                                    double tol) {
  check_dimension(m, x, "in_polytope");
  const ElementSet ground = m.ground();
  std::optional<PolytopeViolation> worst;
  double worst_excess = tol;
  for (int e = 0; e < m.ground_size(); ++e) {
    if (!std::isfinite(x[e]) || x[e] < -tol) {
      return PolytopeViolation{ElementSet::single(e), x[e], 0};
    }
    if (!ground.contains(e) && std::abs(x[e]) > tol) {
      return PolytopeViolation{ElementSet::single(e), x[e], 0};
    }
  }
  const ElementSet support = positive_support(x, 0.0) & ground;
  check_support_size(support, "in_polytope");
  const SubsetTable t = tabulate(m, support, x);
  for (std::size_t k = 1; k < t.sets.size(); ++k) {
    const double excess = t.load[k] - t.rank[k];
    if (excess > worst_excess) {
      worst_excess = excess;
      worst = PolytopeViolation{t.sets[k], t.load[k], t.rank[k]};
    }
  }
  return worst;
}

FractionalPoint implied_vector(const ConvexDecomposition& d) {
  FractionalPoint x(static_cast<std::size_t>(d.matroid.ground_size()), 0.0);
  for (const auto& term : d.terms) {
    for (Element e : term.set) x[e] += term.weight;
  }
  return x;
}

std::optional<std::string> check_decomposition(const ConvexDecomposition& d,
                                               const FractionalPoint* x,
                                               double tol) {
  double total = 0.0;
  for (const auto& term : d.terms) {
    if (!(term.weight > 0.0)) return "nonpositive weight";
    if (!term.set.is_subset_of(d.matroid.ground())) {
      return "term " + term.set.to_string() + " outside effective ground";
    }
    if (!d.matroid.is_independent(term.set)) {
      return "term " + term.set.to_string() + " is dependent";
    }
    total += term.weight;
  }
  if (!d.terms.empty() && std::abs(total - 1.0) > tol) {
    return "weights sum to " + std::to_string(total);
  }
  if (static_cast<int>(d.terms.size()) > d.matroid.ground_size() + 1) {
    return "too many terms: " + std::to_string(d.terms.size());
  }
  if (x != nullptr) {
    const FractionalPoint implied = implied_vector(d);
    if (implied.size() != x->size()) return "dimension mismatch";
    for (std::size_t e = 0; e < implied.size(); ++e) {
      if (std::abs(implied[e] - (*x)[e]) > tol) {
        return "round trip differs at element " + std::to_string(e) + ": " +
               std::to_string(implied[e]) + " vs " + std::to_string((*x)[e]);
      }
    }
  }
  return std::nullopt;
}

namespace {

// Peels independent sets off the residual. Keeps the invariant
//   x = sum(terms) + residual,  residual / remaining in P(m),
// choosing each set as a greedy basis of the support that is also a basis of
// every set in a maximal chain of tight sets, so tight constraints stay
// tight and each peel lowers the dimension of the minimal face.
std::vector<DecompositionTerm> peel(const Matroid& m,
                                    const FractionalPoint& x) {
  constexpr double kTightTolerance = 1e-11;
  const int n = m.ground_size();
  FractionalPoint residual = x;
  for (double& v : residual) {
    if (v < kSnapTolerance) v = 0.0;
  }
  double remaining = 1.0;
  std::vector<DecompositionTerm> terms;

  for (int iteration = 0; iteration < 2 * n + 2; ++iteration) {
    const ElementSet support = positive_support(residual, 0.0);
    if (support.empty()) {
      if (remaining > kSnapTolerance) terms.push_back({remaining, {}});
      break;
    }
    const SubsetTable t = tabulate(m, support, residual);
    const std::size_t count = t.sets.size();
    std::vector<bool> tight(count);
    for (std::size_t k = 0; k < count; ++k) {
      tight[k] = remaining * t.rank[k] - t.load[k] <= kTightTolerance;
    }

    // Maximal chain: repeatedly the smallest tight strict superset.
    std::vector<int> level(static_cast<std::size_t>(n), n + 1);
    std::size_t current = 0;
    int depth = 0;
    while (true) {
      std::size_t next = 0;
      int next_size = 1 << 30;
      for (std::size_t k = 1; k < count; ++k) {
        if (!tight[k] || k == current || (k & current) != current) continue;
        const int size = std::popcount(k);
        if (size < next_size) {
          next = k;
          next_size = size;
        }
      }
      if (next == 0) break;
      for (Element e : t.sets[next] - t.sets[current]) level[e] = depth;
      current = next;
      ++depth;
    }

    std::vector<Element> order = t.elements;
    std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
      if (level[a] != level[b]) return level[a] < level[b];
      if (residual[a] != residual[b]) return residual[a] > residual[b];
      return a < b;
    });
    ElementSet basis;
    for (Element e : order) {
      if (MatroidAccess::independent(m, basis.with(e))) basis.insert(e);
    }

    double step = remaining;
    for (Element e : basis) step = std::min(step, residual[e]);
    for (std::size_t k = 1; k < count; ++k) {
      const int gap = t.rank[k] - (t.sets[k] & basis).size();
      if (gap <= 0 || tight[k]) continue;
      step = std::min(step, (remaining * t.rank[k] - t.load[k]) / gap);
    }
    if (!(step > 0.0)) break;

    terms.push_back({step, basis});
    remaining -= step;
    for (Element e : basis) {
      residual[e] -= step;
      if (residual[e] < kSnapTolerance) residual[e] = 0.0;
    }
    if (remaining <= kSnapTolerance) break;
  }
  return normalize_terms(std::move(terms));
}

}  // namespace

ConvexDecomposition decompose_by_lp(const Matroid& m,
                                    const FractionalPoint& x) {
  check_dimension(m, x, "decompose");
  const ElementSet ground = m.ground();
  if (ground.size() > kDecomposeFallbackMaxGround) {
    throw CapabilityError("decompose_by_lp: ground set too large");
  }
  std::vector<ElementSet> independent;
  for_each_subset(ground, [&](ElementSet s) {
    if (MatroidAccess::independent(m, s)) independent.push_back(s);
  });
  const int columns = static_cast<int>(independent.size());
  LinearProgram lp(columns);
  for (Element e : ground) {
    std::vector<std::pair<int, double>> row;
    for (int j = 0; j < columns; ++j) {
      if (independent[j].contains(e)) row.emplace_back(j, 1.0);
    }
    lp.add_row(std::move(row), RowSense::kEqual, x[e]);
  }
  std::vector<std::pair<int, double>> total;
  for (int j = 0; j < columns; ++j) total.emplace_back(j, 1.0);
  lp.add_row(std::move(total), RowSense::kEqual, 1.0);
  const LpSolution solution = solve_lp(lp);
  std::vector<DecompositionTerm> terms;
  for (int j = 0; j < columns; ++j) {
    if (solution.x[j] > 0.0) terms.push_back({solution.x[j], independent[j]});
  }
  return ConvexDecomposition{m, normalize_terms(std::move(terms))};
}

ConvexDecomposition decompose(const Matroid& m, const FractionalPoint& x) {
  if (auto violation = polytope_violation(m, x, kSnapTolerance)) {
    throw DomainError("decompose: point outside matroid polytope: " +
                      violation->describe());
  }
  ConvexDecomposition d{m, peel(m, x)};
  if (!check_decomposition(d, &x, kSnapTolerance)) return d;
  if (m.ground().size() <= kDecomposeFallbackMaxGround) {
    d = decompose_by_lp(m, x);
    if (!check_decomposition(d, &x, kSnapTolerance)) return d;
  }
  throw InvariantError("decompose: could not certify a decomposition");
}

ConvexDecomposition support_update(const ConvexDecomposition& d,
                                   Element probed, int guide,
                                   const Matroid& contracted) {
  if (guide < 0 || guide >= static_cast<int>(d.terms.size())) {
    throw DomainError("support_update: guide index out of range");
  }
  return support_update_with_guide(d, probed, d.terms[guide].set, contracted);
}

ConvexDecomposition support_update_with_guide(const ConvexDecomposition& d,
                                              Element probed,
                                              ElementSet guide_set,
                                              const Matroid& contracted) {
  if (!guide_set.contains(probed)) {
    throw DomainError("support_update: guide term " + guide_set.to_string() +
                      " does not contain probed element " +
                      std::to_string(probed));
  }
  if (contracted.contracted() != d.matroid.contracted().with(probed) ||
      contracted.ground_size() != d.matroid.ground_size()) {
    throw DomainError("support_update: target matroid is not M / probed");
  }
  ConvexDecomposition out{contracted, d.terms};
  for (auto& term : out.terms) {
    if (term.set.contains(probed)) {
      term.set.erase(probed);
      continue;
    }
    const ExchangeMap phi = exchange_map(d.matroid, guide_set, term.set);
    const Element image = phi(probed);
    if (image != ExchangeMap::kBottom && image != probed) {
      term.set.erase(image);
    }
  }
  for (const auto& term : out.terms) {
    if (!MatroidAccess::independent(contracted, term.set)) {
      throw InvariantError("support_update: term " + term.set.to_string() +
                           " dependent after contracting " +
                           std::to_string(probed));
    }
  }
  return out;
}

}  // namespace probekit
