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

#include "probekit/objective.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <mutex>
#include <numeric>

#include "probekit/errors.hpp"
#include "probekit/lp.hpp"

namespace probekit {

const char* to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kLinear:
      return "linear";
    case ObjectiveKind::kCoverage:
      return "coverage";
    case ObjectiveKind::kWeightedMatroidRank:
      return "weighted_matroid_rank";
  }
  return "unknown";
}

struct Objective::Rep {
  ObjectiveDefinition definition;
  int n = 0;
  // Elements of a weighted-rank objective, heaviest first.
  std::vector<Element> weight_order;
  std::once_flag table_once;
  std::atomic<bool> table_ready{false};
  std::vector<double> table;

  double evaluate(ElementSet s) const;
};

double Objective::Rep::evaluate(ElementSet s) const {
  return std::visit(
      [&](const auto& def) -> double {
        using T = std::decay_t<decltype(def)>;
        if constexpr (std::is_same_v<T, LinearDefinition>) {
          double total = 0.0;
          for (Element e : s) total += def.weights[e];
          return total;
        } else if constexpr (std::is_same_v<T, CoverageDefinition>) {
          std::vector<char> covered(def.item_weights.size(), 0);
          double total = 0.0;
          for (Element e : s) {
            for (int item : def.covers[e]) {
              if (!covered[item]) {
                covered[item] = 1;
                total += def.item_weights[item];
              }
            }
          }
          return total;
        } else {
          ElementSet kept;
          double total = 0.0;
          for (Element e : weight_order) {
            if (!s.contains(e)) continue;
            if (def.matroid.is_independent(kept.with(e))) {
              kept.insert(e);
              total += def.weights[e];
            }
          }
          return total;
        }
      },
      definition);
}

Objective::Objective(std::shared_ptr<Rep> rep) : rep_(std::move(rep)) {}

Objective::Objective() : Objective(linear({})) {}

namespace {

void check_weights(const std::vector<double>& weights, const char* what) {
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw DomainError(std::string(what) + ": weights must be finite and >= 0");
    }
  }
}

}  // namespace

Objective Objective::linear(std::vector<double> weights) {
  check_weights(weights, "linear objective");
  if (static_cast<int>(weights.size()) > kMaxGroundSize) {
    throw DomainError("linear objective: too many elements");
  }
  auto rep = std::make_shared<Rep>();
  rep->n = static_cast<int>(weights.size());
  rep->definition = LinearDefinition{std::move(weights)};
  return Objective(std::move(rep));
}

Objective Objective::coverage(std::vector<std::vector<int>> covers,
                              std::vector<double> item_weights) {
  check_weights(item_weights, "coverage objective");
  if (static_cast<int>(covers.size()) > kMaxGroundSize) {
    throw DomainError("coverage objective: too many elements");
  }
  for (const auto& items : covers) {
    for (int item : items) {
      if (item < 0 || item >= static_cast<int>(item_weights.size())) {
        throw DomainError("coverage objective: item index out of range");
      }
    }
  }
  auto rep = std::make_shared<Rep>();
  rep->n = static_cast<int>(covers.size());
  rep->definition =
      CoverageDefinition{std::move(covers), std::move(item_weights)};
  return Objective(std::move(rep));
}

Objective Objective::weighted_matroid_rank(Matroid matroid,
                                           std::vector<double> weights) {
  check_weights(weights, "weighted matroid rank objective");
  if (matroid.ground_size() != static_cast<int>(weights.size()) ||
      !matroid.contracted().empty()) {
    throw DomainError(
        "weighted matroid rank objective: one weight per element of an "
        "uncontracted matroid required");
  }
  auto rep = std::make_shared<Rep>();
  rep->n = static_cast<int>(weights.size());
  rep->weight_order.resize(weights.size());
  std::iota(rep->weight_order.begin(), rep->weight_order.end(), 0);
  std::stable_sort(rep->weight_order.begin(), rep->weight_order.end(),
                   [&](Element a, Element b) { return weights[a] > weights[b]; });
  rep->definition = WeightedRankDefinition{std::move(matroid), std::move(weights)};
  return Objective(std::move(rep));
}

ObjectiveKind Objective::kind() const {
  return static_cast<ObjectiveKind>(rep_->definition.index());
}

const ObjectiveDefinition& Objective::definition() const {
  return rep_->definition;
}

int Objective::ground_size() const { return rep_->n; }

double Objective::value(ElementSet s) const {
  if (!s.is_subset_of(ElementSet::full(rep_->n))) {
    throw DomainError("objective value: set " + s.to_string() +
                      " outside ground set of size " + std::to_string(rep_->n));
  }
  if (rep_->table_ready.load(std::memory_order_acquire)) {
    return rep_->table[s.bits()];
  }
  return rep_->evaluate(s);
}

const std::vector<double>& Objective::table() const {
  if (rep_->n > kExactMaxGround) {
    throw CapabilityError("objective table: ground set of size " +
                          std::to_string(rep_->n) + " exceeds exact limit " +
                          std::to_string(kExactMaxGround));
  }
  Rep& rep = *rep_;
  std::call_once(rep.table_once, [&rep] {
    const std::uint32_t count = std::uint32_t{1} << rep.n;
    std::vector<double> table(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      table[mask] = rep.evaluate(ElementSet(mask));
    }
    rep.table = std::move(table);
    rep.table_ready.store(true, std::memory_order_release);
  });
  return rep.table;
}

namespace {

void check_point(const Objective& f, const std::vector<double>& y,
                 const char* op) {
  if (static_cast<int>(y.size()) != f.ground_size()) {
    throw DomainError(std::string(op) + ": point dimension mismatch");
  }
  for (double v : y) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
      throw DomainError(std::string(op) + ": point outside [0,1]^E");
    }
  }
}

void check_exact(const Objective& f, const char* op) {
  if (f.ground_size() > kExactMaxGround) {
    throw CapabilityError(std::string(op) + ": ground set of size " +
                          std::to_string(f.ground_size()) +
                          " exceeds exact limit; use sampling");
  }
}

// Product-measure weights of every subset, built one coordinate at a time.
std::vector<double> inclusion_weights(const std::vector<double>& y) {
  std::vector<double> w(std::size_t{1} << y.size(), 0.0);
  w[0] = 1.0;
  std::size_t filled = 1;
  for (std::size_t e = 0; e < y.size(); ++e) {
    const double p = std::clamp(y[e], 0.0, 1.0);
    for (std::size_t k = 0; k < filled; ++k) {
      w[k | filled] = w[k] * p;
      w[k] *= 1.0 - p;
    }
    filled <<= 1;
  }
  return w;
}

double exact_value(const Objective& f, const std::vector<double>& y) {
  if (const auto* lin = std::get_if<LinearDefinition>(&f.definition())) {
    double total = 0.0;
    for (std::size_t e = 0; e < y.size(); ++e) total += lin->weights[e] * y[e];
    return total;
  }
  const std::vector<double>& table = f.table();
  const std::vector<double> w = inclusion_weights(y);
  double total = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) total += w[k] * table[k];
  return total;
}

}  // namespace

MultilinearValue multilinear_exact(const Objective& f,
                                   const std::vector<double>& y) {
  check_point(f, y, "multilinear_exact");
  check_exact(f, "multilinear_exact");
  return {exact_value(f, y), 0.0};
}

MultilinearValue multilinear_sample(const Objective& f,
                                    const std::vector<double>& y,
                                    int n_samples, RandomStream& rng) {
  check_point(f, y, "multilinear_sample");
  if (n_samples < 1) throw DomainError("multilinear_sample: n_samples < 1");
  double mean = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    ElementSet s;
    for (int e = 0; e < f.ground_size(); ++e) {
      if (rng.uniform() < y[e]) s.insert(e);
    }
    const double v = f.value(s);
    const double delta = v - mean;
    mean += delta / (i + 1);
    m2 += delta * (v - mean);
  }
  const double variance = n_samples > 1 ? m2 / (n_samples - 1) : 0.0;
  return {mean, std::sqrt(variance / n_samples)};
}

double partial_derivative(const Objective& f, const std::vector<double>& y,
                          Element e) {
  check_point(f, y, "partial_derivative");
  check_exact(f, "partial_derivative");
  if (e < 0 || e >= f.ground_size()) {
    throw DomainError("partial_derivative: element out of range");
  }
  std::vector<double> hi = y;
  std::vector<double> lo = y;
  hi[e] = 1.0;
  lo[e] = 0.0;
  return exact_value(f, hi) - exact_value(f, lo);
}

std::vector<double> gradient(const Objective& f, const std::vector<double>& y) {
  check_point(f, y, "gradient");
  check_exact(f, "gradient");
  const int n = f.ground_size();
  if (const auto* lin = std::get_if<LinearDefinition>(&f.definition())) {
    return lin->weights;
  }
  // dF/dy_e = sum over S not containing e of w_{-e}(S) (f(S+e) - f(S)),
  // and w(S) = w_{-e}(S) (1 - y_e), w(S+e) = w_{-e}(S) y_e.
  const std::vector<double>& table = f.table();
  std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
  for (int e = 0; e < n; ++e) {
    std::vector<double> rest = y;
    rest[e] = 0.0;
    const std::vector<double> w = inclusion_weights(rest);
    const std::uint32_t bit = std::uint32_t{1} << e;
    double total = 0.0;
    for (std::uint32_t k = 0; k < w.size(); ++k) {
      if (k & bit) continue;
      total += w[k] * (table[k | bit] - table[k]);
    }
    grad[e] = total;
  }
  return grad;
}

double f_plus_bruteforce(const Objective& f, const std::vector<double>& y) {
  check_point(f, y, "f_plus_bruteforce");
  const int n = f.ground_size();
  if (n > kFPlusMaxGround) {
    throw CapabilityError("f_plus_bruteforce: ground set of size " +
                          std::to_string(n) + " exceeds limit " +
                          std::to_string(kFPlusMaxGround));
  }
  const int columns = (1 << n) - 1;  // alpha for every nonempty subset
  LinearProgram lp(columns);
  std::vector<std::pair<int, double>> total;
  for (int j = 0; j < columns; ++j) {
    lp.objective[j] = f.value(ElementSet(static_cast<std::uint32_t>(j + 1)));
    total.emplace_back(j, 1.0);
  }
  lp.add_row(std::move(total), RowSense::kLessEqual, 1.0);
  for (int e = 0; e < n; ++e) {
    std::vector<std::pair<int, double>> row;
    for (int j = 0; j < columns; ++j) {
      if (((j + 1) >> e) & 1) row.emplace_back(j, 1.0);
    }
    lp.add_row(std::move(row), RowSense::kLessEqual, std::clamp(y[e], 0.0, 1.0));
  }
  return solve_lp(lp).value;
}

std::optional<std::string> check_monotone_submodular(const Objective& f) {
  const int n = f.ground_size();
  if (n > kExactMaxGround) {
    throw CapabilityError("check_monotone_submodular: ground set too large");
  }
  constexpr double kTol = 1e-9;
  const std::vector<double>& table = f.table();
  if (std::abs(table[0]) > kTol) return "f(empty) != 0";
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t s = 0; s < count; ++s) {
    for (int a = 0; a < n; ++a) {
      const std::uint32_t bit_a = std::uint32_t{1} << a;
      if (s & bit_a) continue;
      const double gain_a = table[s | bit_a] - table[s];
      if (gain_a < -kTol) {
        return "not monotone: adding " + std::to_string(a) + " to " +
               ElementSet(s).to_string() + " decreases f";
      }
      for (int b = a + 1; b < n; ++b) {
        const std::uint32_t bit_b = std::uint32_t{1} << b;
        if (s & bit_b) continue;
        const double gain_a_after_b =
            table[s | bit_a | bit_b] - table[s | bit_b];
        if (gain_a_after_b > gain_a + kTol) {
          return "not submodular: marginal of " + std::to_string(a) +
                 " grows after adding " + std::to_string(b) + " to " +
                 ElementSet(s).to_string();
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace probekit
