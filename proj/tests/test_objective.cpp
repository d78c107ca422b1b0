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

#include <doctest.h>

#include "probekit/errors.hpp"
#include "probekit/generators.hpp"
#include "probekit/objective.hpp"
#include "support/oracles.hpp"

using namespace probekit;

namespace {

std::vector<Objective> corpus(int count, int max_n, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<Objective> out;
  const ObjectiveKind kinds[] = {ObjectiveKind::kLinear, ObjectiveKind::kCoverage,
                                 ObjectiveKind::kWeightedMatroidRank};
  for (int i = 0; i < count; ++i) {
    out.push_back(random_objective(kinds[i % 3], 1 + rng.below(max_n), rng));
  }
  return out;
}

std::vector<double> random_y(int n, RandomStream& rng) {
  std::vector<double> y(static_cast<std::size_t>(n));
  for (double& v : y) v = rng.uniform();
  return y;
}

}  // namespace

TEST_CASE("value examples") {
  CHECK(Objective::linear({1, 2}).value({0, 1}) == 3.0);
  const Objective shared = Objective::coverage({{0}, {0}}, {1.0});
  CHECK(shared.value({0, 1}) == 1.0);
  for (const Objective& f : corpus(30, 8, 1)) CHECK(f.value({}) == 0.0);
  CHECK_THROWS_AS(Objective::linear({1, 2}).value({2}), DomainError);
  CHECK_THROWS_AS(Objective::linear({-1.0}), DomainError);
}

TEST_CASE("weighted matroid rank takes the heaviest independent set") {
  const Objective f = Objective::weighted_matroid_rank(Matroid::uniform(3, 1),
                                                       {0.2, 0.7, 0.5});
  CHECK(f.value({0, 1, 2}) == doctest::Approx(0.7));
  CHECK(f.value({0, 2}) == doctest::Approx(0.5));
}

TEST_CASE("multilinear examples") {
  CHECK(multilinear_exact(Objective::linear({1, 2}), {0.5, 0.5}).value ==
        doctest::Approx(1.5));
  // min(|S|, 1)
  const Objective any = Objective::coverage({{0}, {0}}, {1.0});
  const MultilinearValue v = multilinear_exact(any, {0.5, 0.5});
  CHECK(v.value == doctest::Approx(0.75));
  CHECK(v.standard_error == 0.0);
}

TEST_CASE("extension property F(1_A) = f(A)") {
  for (const Objective& f : corpus(30, 8, 2)) {
    const int n = f.ground_size();
    for_each_subset(ElementSet::full(n), [&](ElementSet a) {
      std::vector<double> y(n, 0.0);
      for (Element e : a) y[e] = 1.0;
      REQUIRE(multilinear_exact(f, y).value ==
              doctest::Approx(f.value(a)).epsilon(1e-12));
    });
  }
}

TEST_CASE("exact evaluation matches the product formula") {
  RandomStream rng(4);
  for (const Objective& f : corpus(30, 8, 3)) {
    const auto y = random_y(f.ground_size(), rng);
    CHECK(multilinear_exact(f, y).value ==
          doctest::Approx(oracles::multilinear(f, y)).epsilon(1e-12));
  }
}

TEST_CASE("exact mode capacity") {
  const Objective big = Objective::coverage(
      std::vector<std::vector<int>>(kExactMaxGround + 1, {0}), {1.0});
  CHECK_THROWS_AS(
      multilinear_exact(big, std::vector<double>(kExactMaxGround + 1, 0.5)),
      CapabilityError);
  CHECK_THROWS_AS(
      partial_derivative(big, std::vector<double>(kExactMaxGround + 1, 0.5), 0),
      CapabilityError);
  CHECK_THROWS_AS(multilinear_exact(Objective::linear({1}), {0.5, 0.5}),
                  DomainError);
}

TEST_CASE("sampling examples") {
  RandomStream rng(9);
  for (const Objective& f : corpus(15, 8, 5)) {
    const int n = f.ground_size();
    std::vector<double> y(n, 0.0);
    const MultilinearValue zero = multilinear_sample(f, y, 50, rng);
    CHECK(zero.value == 0.0);
    CHECK(zero.standard_error == 0.0);
    const ElementSet a(static_cast<std::uint32_t>(rng.below(1 << n)));
    for (Element e : a) y[e] = 1.0;
    CHECK(multilinear_sample(f, y, 50, rng).value ==
          doctest::Approx(f.value(a)).epsilon(1e-12));
  }
}

TEST_CASE("sampling agrees with exact within 4 standard errors") {
  RandomStream rng(10);
  const auto fs = corpus(100, 8, 6);
  int outside = 0;
  for (const Objective& f : fs) {
    const auto y = random_y(f.ground_size(), rng);
    const MultilinearValue s = multilinear_sample(f, y, 4000, rng);
    const double exact = multilinear_exact(f, y).value;
    outside += std::abs(s.value - exact) > 4.0 * s.standard_error + 1e-12;
  }
  // P(|Z| > 4) ~ 6e-5 per point.
  CHECK(outside == 0);
}

TEST_CASE("partial derivatives") {
  RandomStream rng(12);
  const Objective lin = Objective::linear({0.3, 1.5, 2.0});
  const auto y = random_y(3, rng);
  for (Element e = 0; e < 3; ++e) {
    CHECK(partial_derivative(lin, y, e) == doctest::Approx(lin.value({e})));
  }
  for (const Objective& f : corpus(30, 7, 7)) {
    const int n = f.ground_size();
    const ElementSet s(static_cast<std::uint32_t>(rng.below(1 << n)));
    std::vector<double> ind(n, 0.0);
    for (Element e : s) ind[e] = 1.0;
    const auto y2 = random_y(n, rng);
    const auto grad = gradient(f, y2);
    for (Element e = 0; e < n; ++e) {
      if (!s.contains(e)) {
        CHECK(partial_derivative(f, ind, e) ==
              doctest::Approx(f.value(s.with(e)) - f.value(s)).epsilon(1e-12));
      }
      const double d = partial_derivative(f, y2, e);
      CHECK(grad[e] == doctest::Approx(d).epsilon(1e-12));
      // Multilinearity: a finite difference along e is exact.
      const double h = (1.0 - y2[e]) * rng.uniform();
      if (h > 1e-6) {
        auto up = y2;
        up[e] += h;
        const double fd = (multilinear_exact(f, up).value -
                           multilinear_exact(f, y2).value) / h;
        CHECK(fd == doctest::Approx(d).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("monotone and submodular shape of F on random probes") {
  RandomStream rng(13);
  const auto fs = corpus(50, 8, 8);
  for (int probe = 0; probe < 1000; ++probe) {
    const Objective& f = fs[probe % fs.size()];
    const int n = f.ground_size();
    const auto y = random_y(n, rng);
    const Element e1 = rng.below(n);
    CHECK(partial_derivative(f, y, e1) >= -1e-12);
    if (n < 2) continue;
    Element e2 = rng.below(n - 1);
    if (e2 >= e1) ++e2;
    const double h1 = rng.uniform() * (1.0 - y[e1]);
    const double h2 = rng.uniform() * (1.0 - y[e2]);
    auto at = [&](double a, double b) {
      auto z = y;
      z[e1] += a;
      z[e2] += b;
      return multilinear_exact(f, z).value;
    };
    const double mixed = at(h1, h2) - at(h1, 0) - at(0, h2) + at(0, 0);
    CHECK(mixed <= 1e-12);
  }
}

TEST_CASE("f plus examples and correlation gap direction") {
  RandomStream rng(14);
  for (const Objective& f : corpus(30, 6, 9)) {
    const int n = f.ground_size();
    CHECK(f_plus_bruteforce(f, std::vector<double>(n, 0.0)) ==
          doctest::Approx(0.0));
    const ElementSet a(static_cast<std::uint32_t>(rng.below(1 << n)));
    std::vector<double> ind(n, 0.0);
    for (Element e : a) ind[e] = 1.0;
    CHECK(f_plus_bruteforce(f, ind) == doctest::Approx(f.value(a)).epsilon(1e-9));
    const auto y = random_y(n, rng);
    CHECK(f_plus_bruteforce(f, y) >= multilinear_exact(f, y).value - 1e-9);
  }
  const Objective big = Objective::linear(std::vector<double>(kFPlusMaxGround + 1, 1.0));
  CHECK_THROWS_AS(f_plus_bruteforce(big, std::vector<double>(kFPlusMaxGround + 1, 0.5)),
                  CapabilityError);
}

TEST_CASE("generated objectives are monotone submodular") {
  for (const Objective& f : corpus(60, 8, 10)) {
    CHECK_FALSE(check_monotone_submodular(f).has_value());
  }
}

TEST_CASE("weighted rank over a non-matroid is caught") {
  const Matroid bad = Matroid::explicit_family(3, {{}, {0}, {1}, {2}, {0, 1}});
  const Objective f = Objective::weighted_matroid_rank(bad, {1, 1, 1});
  const auto v = check_monotone_submodular(f);
  REQUIRE(v.has_value());
  CHECK(v->find("submodular") != std::string::npos);
}
