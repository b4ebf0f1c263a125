#include "doctest.h"

#include <algorithm>
#include <set>

#include "nilkit/subgroup.hpp"
#include "support.hpp"

using namespace nilkit;
using namespace testing;

namespace {

NilpotentPresentation parse(std::string const& text) { return NilpotentPresentation::parse(text); }

// Brute-force closure of a set of matrices modulo n.
std::set<std::vector<Integer>> matrix_closure(std::vector<Matrix> const& gens, Integer const& n) {
  std::set<std::vector<Integer>> seen;
  std::vector<Matrix> todo{Matrix::identity(gens.empty() ? 3 : gens[0].n)};
  seen.insert(todo[0].a);
  while (!todo.empty()) {
    Matrix x = todo.back();
    todo.pop_back();
    for (auto const& g : gens) {
      Matrix y = (x * g).reduced(n);
      if (seen.insert(y.a).second) todo.push_back(y);
    }
  }
  return seen;
}

void check_full_form_invariants(NilpotentPresentation const& P, FullFormSequence const& H) {
  REQUIRE(H.rows.size() == H.pivots.size());
  CHECK(H.size() <= P.size());
  for (std::size_t i = 0; i < H.size(); ++i) {
    CHECK(H.rows[i].leading_index() == H.pivots[i]);
    CHECK(P.is_canonical(H.rows[i]));
    CHECK(H.pivot_entry(i) > 0);
    if (i) CHECK(H.pivots[i - 1] < H.pivots[i]);
    if (auto const& e = P.order(H.pivots[i])) CHECK(divides(H.pivot_entry(i), *e));
    for (std::size_t k = i + 1; k < H.size(); ++k) {
      CHECK(H.rows[i][H.pivots[k]] >= 0);
      CHECK(H.rows[i][H.pivots[k]] < H.pivot_entry(k));
    }
    // Expression fidelity.
    CHECK(evaluate_expression(P, H.expressions[i], H.inputs) == H.rows[i]);
  }
  for (auto const& g : H.inputs) CHECK(contains(P, H, g));
  // Closure soundness.
  for (std::size_t i = 0; i < H.size(); ++i) {
    CHECK(contains(P, H, P.inverse(H.rows[i])));
    if (auto o = row_order(P, H, i)) CHECK(contains(P, H, P.power(H.rows[i], *o)));
    for (std::size_t j = 0; j < H.size(); ++j) {
      CHECK(contains(P, H, P.multiply(H.rows[i], H.rows[j])));
    }
  }
}

}  // namespace

TEST_CASE("full form examples") {
  auto h = parse(kHeisenberg);
  auto H = full_form(h, {{1, 0, 0}, {0, 1, 0}});
  CHECK(H.rows == std::vector<MalcevVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(H.pivots == std::vector<std::size_t>{0, 1, 2});
  check_full_form_invariants(h, H);

  auto z2 = free_abelian(2);
  auto Z = full_form(*z2, {{2, 0}, {3, 0}});
  CHECK(Z.rows == std::vector<MalcevVector>{{1, 0}});

  auto t = parse(kZ2xZ);
  auto T = full_form(t, {{1, 4}});
  CHECK(T.rows == std::vector<MalcevVector>{{1, 4}, {0, 8}});
  check_full_form_invariants(t, T);

  auto E = full_form(h, {});
  CHECK(E.empty());
  CHECK(full_form(h, {{0, 0, 0}}).empty());
}

TEST_CASE("membership examples") {
  auto h = parse(kHeisenberg);
  auto G = whole_group(h);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto g = random_element(h, rng, 100);
    auto b = membership(h, G, g);
    REQUIRE(b);
    CHECK(reassemble(h, G, *b) == g);
  }
  CHECK_FALSE(membership(h, full_form(h, {{0, 0, 1}}), {1, 0, 0}));
  auto z = free_abelian(1);
  auto b = membership(*z, full_form(*z, {{6}}), {18});
  REQUIRE(b);
  CHECK(*b == std::vector<Integer>{3});
  CHECK_FALSE(membership(*z, full_form(*z, {{6}}), {9}));
}

TEST_CASE("full form is independent of generator order") {
  std::mt19937_64 rng(5);
  for (char const* text : {kHeisenberg, kUnitriangular4, kMixed, kDihedral8}) {
    auto P = parse(text);
    for (int t = 0; t < 10; ++t) {
      std::vector<MalcevVector> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(random_element(P, rng, 6));
      auto H = full_form(P, gens);
      check_full_form_invariants(P, H);
      for (int s = 0; s < 4; ++s) {
        std::shuffle(gens.begin(), gens.end(), rng);
        // Also replace one generator by a product with another.
        auto alt = gens;
        alt[0] = P.multiply(alt[0], alt[1]);
        CHECK(full_form(P, gens) == H);
        CHECK(full_form(P, alt) == H);
      }
    }
  }
}

TEST_CASE("full form agrees with brute-force closure in Heisenberg groups mod p") {
  std::mt19937_64 rng(17);
  for (long p : {2, 3, 5}) {
    auto P = parse(heisenberg_mod(p));
    auto rep = heisenberg_rep(p);
    for (int t = 0; t < 12; ++t) {
      std::vector<MalcevVector> gens;
      int count = 1 + t % 3;
      for (int k = 0; k < count; ++k) gens.push_back(random_element(P, rng, p));
      auto H = full_form(P, gens);
      check_full_form_invariants(P, H);
      std::vector<Matrix> mats;
      for (auto const& g : gens) mats.push_back(rep.eval(g));
      auto brute = matrix_closure(mats, p);
      // Enumerate h_1^b_1 ... h_s^b_s over canonical ranges.
      std::set<std::vector<Integer>> listed;
      std::vector<Integer> b(H.size());
      std::size_t total = 1;
      for (std::size_t i = 0; i < H.size(); ++i) total *= row_order(P, H, i)->get_ui();
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (std::size_t i = 0; i < H.size(); ++i) {
          unsigned long o = row_order(P, H, i)->get_ui();
          b[i] = r % o;
          r /= o;
        }
        listed.insert(rep.eval(reassemble(P, H, b)).a);
      }
      CHECK(listed.size() == total);
      CHECK(listed == brute);
    }
  }
}

TEST_CASE("series intersections and joins") {
  auto h = parse(kHeisenberg);
  auto G = whole_group(h);
  CHECK(intersect_series(h, G, 2).rows == std::vector<MalcevVector>{{0, 0, 1}});
  CHECK(intersect_series(h, G, 3).empty());
  auto H = full_form(h, {{1, 0, 1}, {0, 0, 2}});
  CHECK(intersect_series(h, H, 2).rows == std::vector<MalcevVector>{{0, 0, 2}});

  CHECK(join(h, H, full_form(h, {})) == H);
  auto z = free_abelian(1);
  CHECK(join(*z, full_form(*z, {{4}}), full_form(*z, {{6}})).rows ==
        std::vector<MalcevVector>{{2}});
  CHECK(join(h, full_form(h, {{1, 0, 0}}), full_form(h, {{0, 1, 0}})) == G);

  CHECK(max_series_level(h, full_form(h, {{0, 0, 1}})) == 2);
  CHECK(max_series_level(h, full_form(h, {{1, 0, 0}})) == 1);
  CHECK_THROWS_AS(max_series_level(h, full_form(h, {})), Error);

  CHECK(series_term(h, 2).rows == std::vector<MalcevVector>{{0, 0, 1}});
  CHECK(series_term(h, 1) == G);
  CHECK(series_term(h, 3).empty());
}

TEST_CASE("normality and normal closure") {
  auto h = parse(kHeisenberg);
  CHECK(is_normal(h, full_form(h, {{0, 0, 1}})));
  CHECK_FALSE(is_normal(h, full_form(h, {{1, 0, 0}})));
  auto N = normal_closure(h, {{1, 0, 0}});
  CHECK(N.rows == std::vector<MalcevVector>{{1, 0, 0}, {0, 0, 1}});
  CHECK(is_normal(h, N));
  CHECK(is_subgroup(h, full_form(h, {{1, 0, 0}}), N));
  CHECK_FALSE(is_subgroup(h, N, full_form(h, {{1, 0, 0}})));
}

TEST_CASE("subgroup presentations") {
  auto h = parse(kHeisenberg);
  auto c = subgroup_presentation(h, full_form(h, {{0, 0, 1}}));
  CHECK(c.target->size() == 1);
  CHECK_FALSE(c.target->order(0));

  auto whole = subgroup_presentation(h, whole_group(h));
  CHECK(*whole.target == h);

  auto H = full_form(h, {{2, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  auto s = subgroup_presentation(h, H);
  REQUIRE(s.target->size() == 3);
  CHECK(s.target->check_consistency());
  CHECK(s.target->conjugate_tail(1, 0) == MalcevVector{0, 0, -4});
  CHECK(s.target->commutator(s.target->generator(0), s.target->generator(1)) ==
        MalcevVector{0, 0, 4});

  // Subgroup arithmetic matches ambient arithmetic through reassemble.
  std::mt19937_64 rng(23);
  for (char const* text : {kUnitriangular4, kMixed, kQuaternion}) {
    auto P = parse(text);
    std::vector<MalcevVector> gens{random_element(P, rng, 4), random_element(P, rng, 4)};
    auto K = full_form(P, gens);
    auto conv = subgroup_presentation(P, K);
    auto const& Q = *conv.target;
    CHECK(Q.check_consistency());
    for (std::size_t x = 0; x < gens.size(); ++x) {
      CHECK(reassemble(P, K, conv.embed[x].coords) == P.canonicalize(gens[x]));
    }
    for (int t = 0; t < 20; ++t) {
      auto u = random_element(Q, rng, 10), v = random_element(Q, rng, 10);
      CHECK(reassemble(P, K, Q.multiply(u, v).coords) ==
            P.multiply(reassemble(P, K, u.coords), reassemble(P, K, v.coords)));
    }
  }
}
