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

#ifndef PROBEKIT_OBJECTIVE_HPP_
#define PROBEKIT_OBJECTIVE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "probekit/element_set.hpp"
#include "probekit/matroid.hpp"
#include "probekit/random.hpp"

namespace probekit {

enum class ObjectiveKind { kLinear, kCoverage, kWeightedMatroidRank };

const char* to_string(ObjectiveKind kind);

struct LinearDefinition {
  std::vector<double> weights;
};

struct CoverageDefinition {
  std::vector<std::vector<int>> covers;  // items covered by each element
  std::vector<double> item_weights;
};

struct WeightedRankDefinition {
  Matroid matroid;
  std::vector<double> weights;
};

using ObjectiveDefinition =
    std::variant<LinearDefinition, CoverageDefinition, WeightedRankDefinition>;

// Exact multilinear evaluation enumerates 2^n subsets.
inline constexpr int kExactMaxGround = 20;
inline constexpr int kFPlusMaxGround = 10;

// A monotone, normalized set function. Linear objectives are also modular, so
// potential and relaxation code may take closed-form shortcuts for them.
class Objective {
 public:
  // The zero function on the empty ground set.
  Objective();
  static Objective linear(std::vector<double> weights);
  static Objective coverage(std::vector<std::vector<int>> covers,
                            std::vector<double> item_weights);
  static Objective weighted_matroid_rank(Matroid matroid,
                                         std::vector<double> weights);

  ObjectiveKind kind() const;
  const ObjectiveDefinition& definition() const;
  int ground_size() const;
  bool is_linear() const { return kind() == ObjectiveKind::kLinear; }

  // f(S); throws DomainError for elements outside the ground set.
  double value(ElementSet s) const;

  // f for all 2^n subsets, built once on first use. Throws CapabilityError
  // above kExactMaxGround.
  const std::vector<double>& table() const;

 private:
  struct Rep;
  explicit Objective(std::shared_ptr<Rep> rep);
  std::shared_ptr<Rep> rep_;
};

struct MultilinearValue {
  double value = 0.0;
  double standard_error = 0.0;  // 0 in exact mode
};

MultilinearValue multilinear_exact(const Objective& f,
                                   const std::vector<double>& y);

MultilinearValue multilinear_sample(const Objective& f,
                                    const std::vector<double>& y,
                                    int n_samples, RandomStream& rng);

// dF/dy_e = F(y | y_e = 1) - F(y | y_e = 0), exact.
double partial_derivative(const Objective& f, const std::vector<double>& y,
                          Element e);

// All partial derivatives at y in one pass.
std::vector<double> gradient(const Objective& f, const std::vector<double>& y);

// max sum_A alpha_A f(A) s.t. sum alpha <= 1, alpha >= 0, and for every j
// sum_{A containing j} alpha_A <= y_j, over all 2^n subsets.
double f_plus_bruteforce(const Objective& f, const std::vector<double>& y);

// Exhaustive check of normalization, monotonicity and submodularity.
std::optional<std::string> check_monotone_submodular(const Objective& f);

}  // namespace probekit

#endif  // PROBEKIT_OBJECTIVE_HPP_
