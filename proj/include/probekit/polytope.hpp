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

#ifndef PROBEKIT_POLYTOPE_HPP_
#define PROBEKIT_POLYTOPE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "probekit/element_set.hpp"
#include "probekit/matroid.hpp"

namespace probekit {

// Coordinates indexed by the base ground set of the matroid in question;
// contracted elements must be 0.
using FractionalPoint = std::vector<double>;

inline constexpr double kSnapTolerance = 1e-9;
// Largest support handled by subset enumeration.
inline constexpr int kEnumerationMaxSupport = 20;
// Largest ground set for the exhaustive LP fallback in decompose.
inline constexpr int kDecomposeFallbackMaxGround = 12;

struct PolytopeViolation {
  ElementSet set;
  double load = 0.0;  // sum of x over set, or the coordinate itself
  int rank = 0;
  std::string describe() const;
};

// Most violated rank constraint sum_{e in A} x_e <= r(A) + tol over subsets
// of the support, or a violated sign/contraction constraint. Throws
// DomainError on dimension mismatch and CapabilityError when the support
// exceeds kEnumerationMaxSupport.
std::optional<PolytopeViolation> polytope_violation(const Matroid& m,
                                                    const FractionalPoint& x,
                                                    double tol);

inline bool in_polytope(const Matroid& m, const FractionalPoint& x,
                        double tol) {
  return !polytope_violation(m, x, tol).has_value();
}

struct DecompositionTerm {
  double weight = 0.0;
  ElementSet set;
  friend bool operator==(const DecompositionTerm&,
                         const DecompositionTerm&) = default;
};

// x = sum_a weight_a * 1[set_a], weights summing to 1, sets independent.
struct ConvexDecomposition {
  Matroid matroid;
  std::vector<DecompositionTerm> terms;
};

FractionalPoint implied_vector(const ConvexDecomposition& d);

// Checks weights, independence, term count and (when given) the round trip
// against x at tol.
std::optional<std::string> check_decomposition(
    const ConvexDecomposition& d, const FractionalPoint* x = nullptr,
    double tol = kSnapTolerance);

// Writes x in P(m) as a convex combination of at most |E|+1 independent sets.
// Throws DomainError if x is outside the polytope (tolerance 1e-9).
ConvexDecomposition decompose(const Matroid& m, const FractionalPoint& x);

// Exhaustive-LP decomposition over every independent set; the fallback of
// decompose, exposed for testing.
ConvexDecomposition decompose_by_lp(const Matroid& m,
                                    const FractionalPoint& x);

// Guided update after probing `probed`: term `guide` (which must contain the
// probed element) drives exchange maps into every other term. The result
// decomposes against `contracted`, which must be d.matroid / probed. Term
// order and weights are preserved.
ConvexDecomposition support_update(const ConvexDecomposition& d,
                                   Element probed, int guide,
                                   const Matroid& contracted);

// Same update driven by an arbitrary independent guide set containing the
// probed element (used when no term of d contains it).
ConvexDecomposition support_update_with_guide(const ConvexDecomposition& d,
                                              Element probed,
                                              ElementSet guide_set,
                                              const Matroid& contracted);

}  // namespace probekit

#endif  // PROBEKIT_POLYTOPE_HPP_
