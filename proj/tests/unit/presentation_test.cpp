#include "doctest.h"

#include "nilkit/presentation.hpp"
#include "support.hpp"

using namespace nilkit;
using namespace testing;

namespace {

NilpotentPresentation parse(char const* text) { return NilpotentPresentation::parse(text); }

MalcevVector word(NilpotentPresentation const& p, char const* w) {
  return p.collect(parse_word(w, p.alphabet()));
}

}  // namespace

TEST_CASE("Heisenberg arithmetic") {
  auto p = parse(kHeisenberg);
  REQUIRE(p.check_consistency());
  CHECK(word(p, "a2 a1") == MalcevVector{1, 1, -1});
  CHECK(p.multiply({1, 2, 0}, {3, 0, 0}) == MalcevVector{4, 2, -6});
  CHECK(p.inverse({1, 1, 0}) == MalcevVector{-1, -1, -1});
  CHECK(p.power({1, 1, 0}, 2) == MalcevVector{2, 2, -1});
  CHECK(word(p, "(a1 a2)^8") == MalcevVector{8, 8, -28});
  CHECK(p.commutator(p.generator(0), p.generator(1)) == MalcevVector{0, 0, 1});
  CHECK(p.inverse_conjugate_tail(1, 0) == MalcevVector{0, 0, 1});
}

TEST_CASE("arithmetic agrees with faithful matrix representations") {
  struct Case {
    char const* text;
    MatrixRep rep;
    long bound;
  };
  std::vector<Case> cases = {
      {kHeisenberg, heisenberg_rep(), 50},
      {kHeisenberg6, heisenberg_rep(6), 20},
      {kUnitriangular4, unitriangular4_rep(), 20},
      {kDihedral8, dihedral8_rep(), 5},
      {kQuaternion, quaternion_rep(), 5},
  };
  std::mt19937_64 rng(7);
  for (auto const& c : cases) {
    auto p = parse(c.text);
    CAPTURE(c.text);
    REQUIRE(p.check_consistency());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(c.rep.eval(p.generator(i)) == c.rep.gens[i]);
    }
    for (int t = 0; t < 60; ++t) {
      MalcevVector u = random_element(p, rng, c.bound);
      MalcevVector v = random_element(p, rng, c.bound);
      CHECK(p.is_canonical(u));
      Matrix mu = c.rep.eval(u), mv = c.rep.eval(v);
      CHECK(c.rep.eval(p.multiply(u, v)) == (mu * mv).reduced(c.rep.mod));
      CHECK(c.rep.eval(p.multiply(p.inverse(u), u)) == Matrix::identity(mu.n));
      std::uniform_int_distribution<long> ed(-40, 40);
      Integer e = ed(rng);
      Matrix pw = Matrix::identity(mu.n);
      Matrix base = e < 0 ? c.rep.eval(p.inverse(u)) : mu;
      for (Integer k = abs(e); k > 0; --k) pw = (pw * base).reduced(c.rep.mod);
      CHECK(c.rep.eval(p.power(u, e)) == pw);
    }
  }
}

TEST_CASE("group axioms hold on random elements") {
  std::mt19937_64 rng(11);
  for (char const* text : {kHeisenberg, kUnitriangular4, kDihedral8, kQuaternion,
                           kHeisenberg6, kMixed}) {
    auto p = parse(text);
    CAPTURE(std::string(text));
    REQUIRE(p.check_consistency());
    for (int t = 0; t < 40; ++t) {
      auto u = random_element(p, rng, 30), v = random_element(p, rng, 30),
           w = random_element(p, rng, 30);
      CHECK(p.multiply(p.multiply(u, v), w) == p.multiply(u, p.multiply(v, w)));
      CHECK(p.multiply(u, p.inverse(u)).is_identity());
      CHECK(p.power(u, 7) == p.multiply(p.power(u, 3), p.power(u, 4)));
      CHECK(p.power(u, -5) == p.inverse(p.power(u, 5)));
    }
  }
}

TEST_CASE("huge exponents stay cheap") {
  auto p = parse(kUnitriangular4);
  Integer big = Integer(1) << 200;
  MalcevVector u = p.power(word(p, "a1 a2 a3"), big);
  auto rep = unitriangular4_rep();
  // (I + N)^n with N strictly upper triangular: I + nN + C(n,2)N^2 + C(n,3)N^3.
  Matrix m = rep.eval(word(p, "a1 a2 a3"));
  Matrix n = m;
  for (auto& x : n.a) x = x;
  for (std::size_t i = 0; i < 4; ++i) n(i, i) = 0;
  Integer c2 = big * (big - 1) / 2, c3 = c2 * (big - 2) / 3;
  Matrix n2 = n * n, n3 = n2 * n, expect = Matrix::identity(4);
  for (std::size_t k = 0; k < 16; ++k) expect.a[k] += big * n.a[k] + c2 * n2.a[k] + c3 * n3.a[k];
  CHECK(rep.eval(u) == expect);

  ExpWord w = parse_exp_word("(a1^3 a2^-2)^1000000000000000000000 a3", p.alphabet());
  CHECK(p.evaluate(w) == p.multiply(p.power(word(p, "a1^3 a2^-2"), Integer("1000000000000000000000")),
                                    p.generator(2)));
}

TEST_CASE("straight-line programs evaluate without expansion") {
  auto p = parse(kHeisenberg);
  auto slp = StraightLineProgram::doubling(0, 101);
  CHECK(p.evaluate(slp) == MalcevVector(std::vector<Integer>{Integer(1) << 100, 0, 0}));
  auto q = StraightLineProgram::from_word(parse_word("a2 a1^5 a2^-3", p.alphabet()));
  CHECK(p.evaluate(q) == word(p, "a2 a1^5 a2^-3"));
}

TEST_CASE("torsion coordinates are reduced") {
  auto p = parse(kDihedral8);
  CHECK(word(p, "a2^2") == MalcevVector{0, 0, 1});
  CHECK(word(p, "a2^4").is_identity());
  CHECK(word(p, "a1 a2 a1") == MalcevVector{0, 1, 1});
  CHECK(p.canonicalize({3, 5, 7}) == word(p, "a1^3 a2^5 a3^7"));
  auto m = parse(kMixed);
  CHECK(word(m, "a2^9") == MalcevVector{0, 1, 2, 0});
  CHECK(word(m, "a2^-1") == MalcevVector{0, 3, -1, 0});
}

TEST_CASE("text format round-trips") {
  for (char const* text : {kHeisenberg, kUnitriangular4, kDihedral8, kQuaternion, kMixed}) {
    auto p = parse(text);
    auto q = NilpotentPresentation::parse(p.to_text());
    CHECK(p == q);
    CHECK(q.to_text() == p.to_text());
  }
}

TEST_CASE("explicit inverse tails are verified") {
  std::string text = std::string(kHeisenberg) + "a2^-1 a1 = a1 a2^-1 a3\n";
  CHECK(NilpotentPresentation::parse(text).check_consistency());
  std::string bad = std::string(kHeisenberg) + "a2^-1 a1 = a1 a2^-1 a3^2\n";
  CHECK_FALSE(NilpotentPresentation::parse(bad).check_consistency());
}

TEST_CASE("inconsistent presentations are detected") {
  // Conjugating twice by an involution must be trivial.
  CHECK_FALSE(parse(R"(nilpotent m=3 c=2
a1 order=2 level=1
a2 order=inf level=1
a3 order=inf level=2
a2 a1 = a1 a2 a3
a1^2 = 1
)").check_consistency());
  // [a2,a1] has order 3 but a2 has order 2 modulo the centre.
  CHECK_FALSE(parse(R"(nilpotent m=3 c=2
a1 order=inf level=1
a2 order=2 level=1
a3 order=3 level=2
a2 a1 = a1 a2 a3
a2^2 = 1
a3^3 = 1
)").check_consistency());
  // Power tail not fixed by conjugation.
  CHECK_FALSE(parse(R"(nilpotent m=3 c=2
a1 order=2 level=1
a2 order=inf level=1
a3 order=2 level=2
a2 a1 = a1 a2 a3
a1^2 = a2
a3^2 = 1
)").check_consistency());
}

TEST_CASE("malformed presentations are rejected") {
  CHECK_THROWS_AS(parse("nilpotent m=1\n"), ParseError);
  CHECK_THROWS_AS(parse("nilpotent m=2 c=1\na1 order=inf level=1\n"), ParseError);
  CHECK_THROWS_AS(parse("nilpotent m=1 c=1\na1 order=3 level=1\n"), ParseError);
  CHECK_THROWS_AS(parse("nilpotent m=2 c=1\na1 order=inf level=1\na2 order=inf level=1\n"
                        "a2 a1 = a1 a2 a2\n"),
                  ParseError);
  // Commutator tail at the same level violates the central series.
  CHECK_THROWS_AS(parse("nilpotent m=3 c=1\na1 order=inf level=1\na2 order=inf level=1\n"
                        "a3 order=inf level=1\na2 a1 = a1 a2 a3\n"),
                  ParseError);
  CHECK_THROWS_AS(parse("nilpotent m=1 c=1\na1 order=inf level=2\n"), ParseError);
}

TEST_CASE("direct products and free abelian groups") {
  auto h = parse(kHeisenberg);
  auto d = parse(kDihedral8);
  auto g = direct_product(h, d);
  CHECK(g->size() == 6);
  CHECK(g->nilpotency_class() == 4);
  CHECK(g->level(3) == 3);
  CHECK(g->check_consistency());
  MalcevVector u{1, 2, 3, 1, 1, 0}, v{4, 5, 6, 1, 0, 1};
  auto uv = g->multiply(u, v);
  auto hu = h.multiply({1, 2, 3}, {4, 5, 6});
  auto du = d.multiply({1, 1, 0}, {1, 0, 1});
  CHECK(uv == MalcevVector(std::vector<Integer>{hu[0], hu[1], hu[2], du[0], du[1], du[2]}));
  auto z = free_abelian(3);
  CHECK(z->multiply({1, 2, 3}, {-1, 5, 0}) == MalcevVector{0, 7, 3});
}
