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
#include "probekit/matroid.hpp"
#include "support/oracles.hpp"

using namespace probekit;

namespace {

Matroid triangle() { return Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}}); }

std::vector<Matroid> corpus() {
  std::vector<Matroid> out = {
      Matroid::uniform(4, 2),
      Matroid::free(3),
      Matroid::partition({0, 0, 1, 1, 1}, {1, 2}),
      triangle(),
      Matroid::graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {0, 1}}),
      Matroid::explicit_family(3, {{}, {0}, {1}}),
  };
  RandomStream rng(11);
  for (int i = 0; i < 40; ++i) out.push_back(random_matroid(1 + i % 8, rng));
  return out;
}

}  // namespace

TEST_CASE("independence examples") {
  CHECK(Matroid::uniform(3, 2).is_independent({0, 1}));
  CHECK_FALSE(triangle().is_independent({0, 1, 2}));
  CHECK(triangle().is_independent({0, 1}));
  const Matroid part = Matroid::partition({0, 0, 1}, {1, 1});
  CHECK(part.is_independent({0, 2}));
  CHECK_FALSE(part.is_independent({0, 1}));
}

TEST_CASE("rank examples") {
  CHECK(Matroid::uniform(4, 2).rank({0, 1, 2}) == 2);
  for (const Matroid& m : corpus()) CHECK(m.rank({}) == 0);
  CHECK(Matroid::explicit_family(2, {{}, {0}, {1}}).rank({0, 1}) == 1);
}

TEST_CASE("foreign elements are domain errors") {
  const Matroid m = Matroid::uniform(3, 2);
  CHECK_THROWS_AS(m.is_independent({3}), DomainError);
  CHECK_THROWS_AS(m.rank({0, 5}), DomainError);
  CHECK_THROWS_AS(m.contract(1).is_independent({1}), DomainError);
  CHECK_THROWS_AS(m.contract(7), DomainError);
}

TEST_CASE("contraction examples") {
  const Matroid u = Matroid::uniform(4, 2).contract(0);
  CHECK(u.is_independent({1}));
  CHECK_FALSE(u.is_independent({1, 2}));
  CHECK(u.ground() == ElementSet({1, 2, 3}));

  const Matroid part = Matroid::partition({0, 0, 1}, {1, 1}).contract(0);
  CHECK_FALSE(part.is_independent({1}));
  CHECK(part.is_independent({2}));

  // Contracting a loop is rejected.
  CHECK_THROWS_AS(part.contract(1), DomainError);
  CHECK_THROWS_AS(Matroid::uniform(2, 0).contract(0), DomainError);
}

TEST_CASE("contraction commutes and matches S+e") {
  for (const Matroid& m : corpus()) {
    const auto base = oracles::oracle_of(m);
    const int n = m.ground_size();
    for (Element e = 0; e < n; ++e) {
      if (!m.is_independent({e})) continue;
      const Matroid me = m.contract(e);
      for_each_subset(me.ground(), [&](ElementSet s) {
        CHECK(me.is_independent(s) == base(s.with(e)));
        CHECK(me.rank(s) == oracles::rank(base, s.with(e)) - 1);
      });
      for (Element f = 0; f < n; ++f) {
        if (f == e || !me.is_independent({f})) continue;
        const Matroid ef = me.contract(f);
        const Matroid fe = m.contract(f).contract(e);
        CHECK(ef.ground() == fe.ground());
        for_each_subset(ef.ground(), [&](ElementSet s) {
          CHECK(ef.is_independent(s) == fe.is_independent(s));
        });
      }
    }
  }
}

TEST_CASE("independence and rank agree with brute force") {
  for (const Matroid& m : corpus()) {
    const auto indep = oracles::oracle_of(m);
    for_each_subset(m.ground(), [&](ElementSet s) {
      REQUIRE(m.is_independent(s) == indep(s));
      REQUIRE(m.rank(s) == oracles::rank(indep, s));
    });
  }
}

TEST_CASE("axioms hold on the corpus") {
  for (const Matroid& m : corpus()) {
    const auto indep = oracles::oracle_of(m);
    CHECK(oracles::downward_closed(indep, m.ground()));
    CHECK(oracles::exchange_axiom_holds(indep, m.ground()));
    CHECK_FALSE(verify_axioms(m).has_value());
  }
}

TEST_CASE("verify_axioms names the broken axiom") {
  const auto hole = verify_axioms(Matroid::explicit_family(2, {{}, {0, 1}}));
  REQUIRE(hole.has_value());
  CHECK(hole->find("not downward closed") != std::string::npos);

  const auto exchange =
      verify_axioms(Matroid::explicit_family(3, {{}, {0}, {1}, {2}, {0, 1}}));
  REQUIRE(exchange.has_value());
  CHECK(exchange->find("exchange axiom") != std::string::npos);

  const auto empty = verify_axioms(Matroid::explicit_family(1, {{0}}));
  REQUIRE(empty.has_value());
  CHECK(empty->find("empty set") != std::string::npos);
}

TEST_CASE("verify_axioms agrees with the pairwise oracle on random families") {
  RandomStream rng(5);
  int matroids = 0, rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + rng.below(5);
    // Random downward-closed family generated by a few random sets.
    std::vector<ElementSet> fam;
    for (int g = 0; g < 1 + rng.below(3); ++g) {
      for_each_subset(ElementSet(static_cast<std::uint32_t>(rng.below(1 << n))),
                      [&](ElementSet s) { fam.push_back(s); });
    }
    const Matroid m = Matroid::explicit_family(n, fam);
    const bool expected =
        oracles::exchange_axiom_holds(oracles::oracle_of(m), m.ground());
    CHECK(!verify_axioms(m).has_value() == expected);
    (expected ? matroids : rejected)++;
  }
  CHECK(matroids > 20);
  CHECK(rejected > 20);
}

TEST_CASE("exchange map examples") {
  const Matroid u24 = Matroid::uniform(4, 2);
  {
    const ExchangeMap phi = exchange_map(u24, {0, 1}, {1, 2});
    CHECK(phi(1) == 1);
    CHECK(phi(0) == 2);
    CHECK_FALSE(check_exchange_map(u24, phi).has_value());
  }
  {
    // bottom is invalid: B + a has three elements.
    const ExchangeMap phi = exchange_map(u24, {0}, {1, 2});
    CHECK((phi(0) == 1 || phi(0) == 2));
    CHECK_FALSE(check_exchange_map(u24, phi).has_value());
    int valid = 0;
    for (Element f : {ExchangeMap::kBottom, 1, 2}) {
      valid += oracles::exchange_conditions(oracles::oracle_of(u24), {0}, {1, 2},
                                            [&](Element) { return f; });
    }
    CHECK(valid == 2);
  }
  {
    const Matroid part = Matroid::partition({0, 0, 1, 1}, {1, 1});
    const ExchangeMap phi = exchange_map(part, {0, 2}, {1, 3});
    CHECK(phi(0) == 1);
    CHECK(phi(2) == 3);
    // Every assignment of {a, c} into {b, d, bottom}: only this one is valid.
    const auto indep = oracles::oracle_of(part);
    int valid = 0;
    for (Element fa : {ExchangeMap::kBottom, 1, 3}) {
      for (Element fc : {ExchangeMap::kBottom, 1, 3}) {
        const bool ok = oracles::exchange_conditions(
            indep, {0, 2}, {1, 3}, [&](Element e) { return e == 0 ? fa : fc; });
        if (ok) CHECK((fa == 1 && fc == 3));
        valid += ok;
      }
    }
    CHECK(valid == 1);
  }
}

TEST_CASE("exchange map rejects dependent inputs") {
  CHECK_THROWS_AS(exchange_map(triangle(), {0, 1, 2}, {0}), DomainError);
  CHECK_THROWS_AS(exchange_map(triangle(), {0}, {0, 1, 2}), DomainError);
}

TEST_CASE("exchange maps pass the property check on all pairs") {
  long maps = 0;
  for (const Matroid& base : corpus()) {
    std::vector<Matroid> views = {base};
    for (Element e : base.ground()) {
      if (base.is_independent({e})) {
        views.push_back(base.contract(e));
        break;
      }
    }
    for (const Matroid& m : views) {
      const auto indep = oracles::oracle_of(m);
      const auto fam = oracles::family(indep, m.ground());
      for (ElementSet a : fam) {
        for (ElementSet b : fam) {
          const ExchangeMap phi = exchange_map(m, a, b);
          REQUIRE_FALSE(check_exchange_map(m, phi).has_value());
          REQUIRE(oracles::exchange_conditions(
              indep, a, b, [&](Element e) { return phi(e); }));
          ++maps;
        }
      }
    }
  }
  CHECK(maps > 1000);
}

TEST_CASE("check_exchange_map rejects a broken map") {
  const Matroid u24 = Matroid::uniform(4, 2);
  ExchangeMap phi({0, 1}, {1, 2});
  phi.assign(1, 1);
  phi.assign(0, ExchangeMap::kBottom);  // B + a has size 3
  CHECK(check_exchange_map(u24, phi).has_value());
}
