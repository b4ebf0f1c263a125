#include "nilkit/torsion.hpp"

#include "nilkit/conjugacy.hpp"
#include "nilkit/homkit.hpp"
#include "nilkit/quotient.hpp"

namespace nilkit {

namespace {

// Integer kernel of Z^n -> Z^k, x -> (rows[j] . x)_j.
std::vector<MalcevVector> integer_kernel(std::size_t n, std::vector<MalcevVector> const& rows) {
  if (rows.empty()) {
    std::vector<MalcevVector> basis;
    for (std::size_t i = 0; i < n; ++i) {
      basis.emplace_back(n);
      basis.back()[i] = 1;
    }
    return basis;
  }
  std::vector<MalcevVector> images(n, MalcevVector(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) images[i][j] = rows[j][i];
  }
  auto Zn = free_abelian(n);
  Homomorphism f(Zn, whole_group(*Zn), free_abelian(rows.size()), std::move(images));
  return f.kernel().rows;
}

// Torsion of an abelian group given by a nilpotent presentation, as
// coordinate vectors. The relation lattice L is spanned by e_i r_i - t_i for
// power relations h_i^{r_i} = t_i; the torsion is Sat(L) / L with
// Sat(L) = (L^perp)^perp.
std::vector<MalcevVector> abelian_torsion(NilpotentPresentation const& A) {
  std::size_t const n = A.size();
  std::vector<MalcevVector> L;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto const& e = A.order(i)) {
      MalcevVector r(n);
      MalcevVector const& t = A.power_tail(i);
      for (std::size_t l = 0; l < n; ++l) r[l] = -t[l];
      r[i] += *e;
      L.push_back(std::move(r));
    }
  }
  if (L.empty()) return {};
  auto sat = integer_kernel(n, integer_kernel(n, L));
  std::vector<MalcevVector> out;
  for (auto const& x : sat) {
    MalcevVector g = A.canonicalize(x);
    if (!g.is_identity()) out.push_back(std::move(g));
  }
  return out;
}

// T(Z(G)) as elements of G.
std::vector<MalcevVector> central_torsion(NilpotentPresentation const& P) {
  std::vector<MalcevVector> basis;
  for (std::size_t i = 0; i < P.size(); ++i) basis.push_back(P.generator(i));
  FullFormSequence Z = centralizer(P, basis);
  auto conv = subgroup_presentation(P, Z);
  std::vector<MalcevVector> out;
  for (auto const& b : abelian_torsion(*conv.target)) out.push_back(reassemble(P, Z, b.coords));
  return out;
}

// Lifts of generators of T(A / N) for N normal in A, as elements of A.
std::vector<MalcevVector> quotient_torsion(PresentationPtr const& A, FullFormSequence const& N) {
  QuotientMap q(A, N);
  std::vector<MalcevVector> out;
  for (auto const& t : torsion_subgroup(*q.target()).subgroup.rows) out.push_back(q.lift(t));
  return out;
}

// Is_K(N) for N normal in K, both full forms in G.
FullFormSequence relative_isolator(NilpotentPresentation const& P, FullFormSequence const& K,
                                   FullFormSequence const& N) {
  auto conv = subgroup_presentation(P, K);
  std::vector<MalcevVector> coords;
  for (auto const& r : N.rows) {
    auto b = membership(P, K, r);
    if (!b) throw Error("internal error: subgroup outside its normalizer");
    coords.emplace_back(std::move(*b));
  }
  std::vector<MalcevVector> gens = N.rows;
  for (auto const& t : quotient_torsion(conv.target, full_form(*conv.target, coords))) {
    gens.push_back(reassemble(P, K, t.coords));
  }
  return full_form(P, gens);
}

}  // namespace

TorsionData torsion_subgroup(NilpotentPresentation const& P, TowerStats* stats) {
  PresentationPtr G = borrow(P);
  FullFormSequence T = full_form(P, {});
  int steps = 0;
  while (true) {
    std::vector<MalcevVector> gens = T.rows;
    QuotientMap q(G, T);
    for (auto const& t : central_torsion(*q.target())) gens.push_back(q.lift(t));
    FullFormSequence next = full_form(P, gens);
    if (next == T) break;
    T = std::move(next);
    ++steps;
    if (steps > std::max(P.nilpotency_class(), 1)) {
      throw Error("internal error: torsion tower longer than the class");
    }
  }
  if (stats) stats->torsion_steps = steps;

  TorsionData out;
  out.order = 1;
  for (std::size_t i = 0; i < T.size(); ++i) {
    Order e = row_order(P, T, i);
    if (!e) throw Error("internal error: torsion row with infinite pivot");
    out.order *= *e;
  }
  for (auto const& r : T.rows) {
    if (!P.power(r, out.order).is_identity()) throw Error("internal error: torsion row of infinite order");
  }
  out.presentation = subgroup_presentation(P, T);
  out.subgroup = std::move(T);
  return out;
}

Integer torsion_order(NilpotentPresentation const& P) {
  return torsion_subgroup(P).order;
}

FullFormSequence isolator(NilpotentPresentation const& P, FullFormSequence const& H,
                          TowerStats* stats) {
  // Y <- Is_{N(Y)}(Y) stays inside Is_G(H) and only stops at Is_G(H): if
  // Y < Is_G(H) then Y < N_{Is_G(H)}(Y), which lies in Is_{N(Y)}(Y).
  FullFormSequence Y = H;
  int rounds = 0;
  while (true) {
    FullFormSequence next = relative_isolator(P, normalizer(P, Y), Y);
    ++rounds;
    if (next == Y) break;
    Y = std::move(next);
  }
  if (stats) stats->isolator_rounds = rounds;
  for (auto const& h : H.rows) {
    if (!contains(P, Y, h)) throw Error("internal error: isolator misses H");
  }
  return Y;
}

}  // namespace nilkit
