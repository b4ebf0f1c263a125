#include "doctest.h"

#include <algorithm>

#include "nilkit/cosets.hpp"
#include "nilkit/oracle.hpp"
#include "support.hpp"

using namespace nilkit;
using namespace testing;

namespace {

PresentationPtr load(std::string const& text) {
  return std::make_shared<const NilpotentPresentation>(NilpotentPresentation::parse(text));
}

FullFormSequence random_subgroup(NilpotentPresentation const& P, std::mt19937_64& rng,
                                 long bound) {
  std::vector<MalcevVector> gens;
  int k = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < k; ++i) gens.push_back(random_element(P, rng, bound));
  return full_form(P, gens);
}

// Same coset r * I.
bool same_coset(NilpotentPresentation const& P, CosetIntersection const& a,
                CosetIntersection const& b) {
  return a.intersection == b.intersection &&
         contains(P, a.intersection,
                  P.multiply(P.inverse(a.representative), b.representative));
}

}  // namespace

TEST_CASE("coset intersection examples") {
  auto z = free_abelian(1);
  auto r = coset_intersection(*z, {1}, full_form(*z, {{2}}), {0}, full_form(*z, {{3}}));
  REQUIRE(r);
  CHECK(r->intersection.rows == std::vector<MalcevVector>{{6}});
  CHECK(((r->representative[0] % 6) + 6) % 6 == 3);

  CHECK_FALSE(coset_intersection(*z, {1}, full_form(*z, {{2}}), {0}, full_form(*z, {{2}})));

  auto h = load(kHeisenberg);
  auto H = full_form(*h, {{1, 1, 0}, {0, 0, 2}});
  auto same = coset_intersection(*h, h->identity(), H, h->identity(), H);
  REQUIRE(same);
  CHECK(same->intersection == H);
  CHECK(contains(*h, H, same->representative));

  // a3 <a1> meets <a1 a3> in exactly a1 a3.
  auto c = coset_intersection(*h, {0, 0, 1}, full_form(*h, {{1, 0, 0}}), h->identity(),
                              full_form(*h, {{1, 0, 1}}));
  REQUIRE(c);
  CHECK(c->representative == MalcevVector{1, 0, 1});
  CHECK(c->intersection.empty());
}

TEST_CASE("subgroup intersection examples") {
  auto z2 = free_abelian(2);
  CHECK(subgroup_intersection(*z2, full_form(*z2, {{2, 0}}), full_form(*z2, {{3, 0}})).rows ==
        std::vector<MalcevVector>{{6, 0}});
  auto h = load(kHeisenberg);
  auto H = full_form(*h, {{1, 0, 0}, {0, 0, 1}}), K = full_form(*h, {{0, 1, 0}, {0, 0, 1}});
  CHECK(subgroup_intersection(*h, H, K).rows == std::vector<MalcevVector>{{0, 0, 1}});
  CHECK(subgroup_intersection(*h, H, H) == H);
}

TEST_CASE("coset intersections agree with exhaustive search") {
  std::mt19937_64 rng(43);
  for (auto const& text : {heisenberg_mod(5), heisenberg_mod(4), std::string(kDihedral8),
                           std::string(kQuaternion), std::string(kUnitriangular4Mod3)}) {
    auto P = load(text);
    auto T = FiniteGroupTable::enumerate(P);
    for (int t = 0; t < 15; ++t) {
      auto H = random_subgroup(*P, rng, 4), K = random_subgroup(*P, rng, 4);
      auto g1 = random_element(*P, rng, 4), g2 = random_element(*P, rng, 4);
      if (t % 2) {
        // Force a common point.
        auto x = random_element(*P, rng, 4);
        g1 = P->multiply(x, P->inverse(H.empty() ? P->identity() : H.rows.front()));
        g2 = x;
      }
      auto brute = brute_coset_intersection(T, T.index(g1), T.closure(H.rows), T.index(g2),
                                            T.closure(K.rows));
      auto r = coset_intersection(*P, g1, H, g2, K);
      CHECK(r.has_value() == !brute.empty());
      if (!r) continue;
      Set got;
      for (auto i : T.closure(r->intersection.rows)) {
        got.push_back(T.multiply(T.index(r->representative), i));
      }
      std::sort(got.begin(), got.end());
      CHECK(got == brute);
    }
  }
}

TEST_CASE("coset intersections in infinite groups") {
  std::mt19937_64 rng(47);
  for (auto const& text : {kHeisenberg, kUnitriangular4, kMixed}) {
    auto P = load(text);
    for (int t = 0; t < 10; ++t) {
      auto H = random_subgroup(*P, rng, 5), K = random_subgroup(*P, rng, 5);
      auto x = random_element(*P, rng, 50);
      auto h = reassemble(*P, H, std::vector<Integer>(H.size(), Integer(t - 4)));
      auto k = K.empty() ? P->identity() : K.rows.back();
      auto g1 = P->multiply(x, P->inverse(h)), g2 = P->multiply(x, P->inverse(k));
      // Representatives and intersection rows are checked inside.
      auto r = coset_intersection(*P, g1, H, g2, K);
      REQUIRE(r);

      // Moving g1 within its coset does not change the answer.
      auto inside = P->multiply(g1, reassemble(*P, H, std::vector<Integer>(H.size(), Integer(2))));
      auto moved = coset_intersection(*P, inside, H, g2, K);
      REQUIRE(moved);
      CHECK(same_coset(*P, *r, *moved));
    }
  }
}

TEST_CASE("iterated coset intersection does not depend on the order") {
  std::mt19937_64 rng(53);
  auto P = load(kUnitriangular4);
  int nonempty = 0;
  for (int t = 0; t < 50; ++t) {
    auto x = random_element(*P, rng, 20);
    std::vector<FullFormSequence> S;
    std::vector<MalcevVector> g;
    for (int i = 0; i < 3; ++i) {
      S.push_back(random_subgroup(*P, rng, 3));
      auto s = S.back().empty() ? P->identity() : S.back().rows.front();
      g.push_back(P->multiply(x, P->power(s, Integer(i + 1))));
    }
    auto fold = [&](int a, int b, int c) -> std::optional<CosetIntersection> {
      auto r = coset_intersection(*P, g[a], S[a], g[b], S[b]);
      if (!r) return std::nullopt;
      return coset_intersection(*P, r->representative, r->intersection, g[c], S[c]);
    };
    auto r1 = fold(0, 1, 2), r2 = fold(2, 0, 1), r3 = fold(1, 2, 0);
    REQUIRE(r1);
    REQUIRE(r2);
    REQUIRE(r3);
    CHECK(same_coset(*P, *r1, *r2));
    CHECK(same_coset(*P, *r1, *r3));
    ++nonempty;
  }
  CHECK(nonempty == 50);
}
