#pragma once

#include <random>
#include <string>
#include <vector>

#include "nilkit/presentation.hpp"

namespace testing {

using nilkit::Integer;
using nilkit::MalcevVector;
using nilkit::NilpotentPresentation;
using nilkit::Order;
using nilkit::PresentationData;
using nilkit::PresentationPtr;

inline char const* const kHeisenberg = R"(nilpotent m=3 c=2
a1 order=inf level=1
a2 order=inf level=1
a3 order=inf level=2
a2 a1 = a1 a2 a3^-1
)";

// Upper unitriangular 4x4 integer matrices: x12 x23 x34 x13 x24 x14.
inline char const* const kUnitriangular4 = R"(nilpotent m=6 c=3
a1 order=inf level=1
a2 order=inf level=1
a3 order=inf level=1
a4 order=inf level=2
a5 order=inf level=2
a6 order=inf level=3
a2 a1 = a1 a2 a4^-1
a3 a2 = a2 a3 a5^-1
a4 a3 = a3 a4 a6
a5 a1 = a1 a5 a6^-1
)";

// Dihedral group of order 8: s, r, r^2.
inline char const* const kDihedral8 = R"(nilpotent m=3 c=2
a1 order=2 level=1
a2 order=2 level=1
a3 order=2 level=2
a2 a1 = a1 a2 a3
a1^2 = 1
a2^2 = a3
a3^2 = 1
)";

// Quaternion group: i, j, -1.
inline char const* const kQuaternion = R"(nilpotent m=3 c=2
a1 order=2 level=1
a2 order=2 level=1
a3 order=2 level=2
a2 a1 = a1 a2 a3
a1^2 = a3
a2^2 = a3
a3^2 = 1
)";

// Heisenberg group over Z/6.
inline char const* const kHeisenberg6 = R"(nilpotent m=3 c=2
a1 order=6 level=1
a2 order=6 level=1
a3 order=6 level=2
a2 a1 = a1 a2 a3^-1
a1^6 = 1
a2^6 = 1
a3^6 = 1
)";

// Infinite cyclic by Z/4 with a central Z and a central Z/4.
inline char const* const kMixed = R"(nilpotent m=4 c=2
a1 order=inf level=1
a2 order=4 level=1
a3 order=inf level=2
a4 order=4 level=2
a2 a1 = a1 a2 a4
a2^4 = a3
a4^4 = 1
)";

// Unitriangular 4x4 over Z/3: class 3, order 729.
inline char const* const kUnitriangular4Mod3 = R"(nilpotent m=6 c=3
a1 order=3 level=1
a2 order=3 level=1
a3 order=3 level=1
a4 order=3 level=2
a5 order=3 level=2
a6 order=3 level=3
a2 a1 = a1 a2 a4^2
a3 a2 = a2 a3 a5^2
a4 a3 = a3 a4 a6
a5 a1 = a1 a5 a6^2
a1^3 = 1
a2^3 = 1
a3^3 = 1
a4^3 = 1
a5^3 = 1
a6^3 = 1
)";

inline std::string heisenberg_mod(long n) {
  std::string e = std::to_string(n);
  return "nilpotent m=3 c=2\na1 order=" + e + " level=1\na2 order=" + e +
         " level=1\na3 order=" + e + " level=2\na2 a1 = a1 a2 a3^-1\na1^" + e +
         " = 1\na2^" + e + " = 1\na3^" + e + " = 1\n";
}

// Z/2 x Z.
inline char const* const kZ2xZ = R"(nilpotent m=2 c=1
a1 order=2 level=1
a2 order=inf level=1
a1^2 = 1
)";

/// Square integer matrices used as a faithful-representation oracle.
struct Matrix {
  std::size_t n = 0;
  std::vector<Integer> a;

  static Matrix identity(std::size_t n) {
    Matrix m{n, std::vector<Integer>(n * n)};
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  Integer& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  Integer const& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  friend Matrix operator*(Matrix const& x, Matrix const& y) {
    Matrix r{x.n, std::vector<Integer>(x.n * x.n)};
    for (std::size_t i = 0; i < x.n; ++i)
      for (std::size_t k = 0; k < x.n; ++k)
        if (x(i, k) != 0)
          for (std::size_t j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
    return r;
  }
  friend bool operator==(Matrix const& x, Matrix const& y) { return x.a == y.a; }
  Matrix reduced(Integer const& mod) const {
    Matrix r = *this;
    if (mod != 0)
      for (auto& v : r.a) v = nilkit::floor_mod(v, mod);
    return r;
  }
};

/// Generator matrices and their inverses; entries taken modulo `mod` if
/// nonzero.
struct MatrixRep {
  std::vector<Matrix> gens, invs;
  Integer mod = 0;

  Matrix power(std::size_t i, Integer e) const {
    Matrix base = e < 0 ? invs[i] : gens[i];
    if (e < 0) e = -e;
    Matrix r = Matrix::identity(base.n);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = (r * base).reduced(mod);
      base = (base * base).reduced(mod);
      e >>= 1;
    }
    return r;
  }
  Matrix eval(MalcevVector const& v) const {
    Matrix r = Matrix::identity(gens[0].n);
    for (std::size_t i = 0; i < v.size(); ++i) r = (r * power(i, v[i])).reduced(mod);
    return r;
  }
};

inline Matrix elementary(std::size_t n, std::size_t i, std::size_t j, long v) {
  Matrix m = Matrix::identity(n);
  m(i, j) = v;
  return m;
}

inline MatrixRep heisenberg_rep(long mod = 0) {
  MatrixRep r;
  r.mod = mod;
  std::pair<int, int> pos[] = {{0, 1}, {1, 2}, {0, 2}};
  for (auto [i, j] : pos) {
    r.gens.push_back(elementary(3, i, j, 1));
    r.invs.push_back(elementary(3, i, j, -1));
  }
  return r;
}

inline MatrixRep unitriangular4_rep() {
  MatrixRep r;
  std::pair<int, int> pos[] = {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}, {0, 3}};
  for (auto [i, j] : pos) {
    r.gens.push_back(elementary(4, i, j, 1));
    r.invs.push_back(elementary(4, i, j, -1));
  }
  return r;
}

inline Matrix mat2(long a, long b, long c, long d) {
  Matrix m = Matrix::identity(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline MatrixRep dihedral8_rep() {
  MatrixRep r;
  Matrix s = mat2(1, 0, 0, -1), rot = mat2(0, -1, 1, 0);
  r.gens = {s, rot, rot * rot};
  r.invs = {s, rot * rot * rot, rot * rot};
  return r;
}

// Left multiplication by i and j on the quaternions, basis (1, i, j, k).
inline MatrixRep quaternion_rep() {
  Matrix li = Matrix::identity(4), lj = Matrix::identity(4);
  li.a.assign(16, 0);
  lj.a.assign(16, 0);
  // i*1 = i, i*i = -1, i*j = k, i*k = -j
  li(1, 0) = 1; li(0, 1) = -1; li(3, 2) = 1; li(2, 3) = -1;
  // j*1 = j, j*i = -k, j*j = -1, j*k = i
  lj(2, 0) = 1; lj(3, 1) = -1; lj(0, 2) = -1; lj(1, 3) = 1;
  Matrix m1 = li * li;
  MatrixRep r;
  r.gens = {li, lj, m1};
  r.invs = {li * m1, lj * m1, m1};
  return r;
}

inline MalcevVector random_element(NilpotentPresentation const& p, std::mt19937_64& rng,
                                   long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  MalcevVector v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = d(rng);
  return p.canonicalize(v);
}

// Random consistent class-2 presentation with a central second level and
// mixed finite and infinite orders. The product of all finite orders is at
// most `max_torsion`, which bounds |T(G)|.
inline PresentationPtr random_class2_presentation(std::mt19937_64& rng,
                                                  long max_torsion = 500) {
  static long const kOrders[] = {2, 3, 4, 5, 6};
  while (true) {
    std::size_t k = 2 + rng() % 2, l = 1 + rng() % 2;
    PresentationData d;
    d.nilpotency_class = 2;
    long product = 1;
    for (std::size_t i = 0; i < k + l; ++i) {
      Order e;
      if (rng() % 2) {
        long o = kOrders[rng() % 5];
        if (product * o <= max_torsion) {
          e = Integer(o);
          product *= o;
        }
      }
      d.generators.push_back({e, i < k ? 1 : 2});
    }
    std::size_t const m = k + l;
    auto random_tail = [&](std::size_t from) {
      MalcevVector t(m);
      for (std::size_t b = from; b < m; ++b) {
        long v = static_cast<long>(rng() % 5) - 2;
        if (auto const& e = d.generators[b].order) {
          t[b] = ((v % e->get_si()) + e->get_si()) % e->get_si();
        } else {
          t[b] = v;
        }
      }
      return t;
    };
    for (std::size_t j = 1; j < k; ++j) {
      for (std::size_t i = 0; i < j; ++i) d.conjugates[{j, i}] = random_tail(k);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (d.generators[i].order) d.powers[i] = i < k ? random_tail(k) : MalcevVector(m);
    }
    auto P = nilkit::make_presentation(std::move(d));
    if (P->check_consistency()) return P;
  }
}

}  // namespace testing
