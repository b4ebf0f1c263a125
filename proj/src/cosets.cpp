#include "nilkit/cosets.hpp"

#include "nilkit/homkit.hpp"
#include "nilkit/quotient.hpp"

namespace nilkit {

namespace {

MalcevVector product_of_powers(NilpotentPresentation const& P,
                               std::vector<MalcevVector> const& gens,
                               std::vector<Integer> const& e) {
  MalcevVector x = P.identity();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (e[i] != 0) x = P.multiply(x, P.power(gens[i], e[i]));
  }
  return x;
}

// Z^n -> codomain, unit vector i -> images[i].
Homomorphism from_free_abelian(std::vector<MalcevVector> images, PresentationPtr codomain) {
  auto Z = free_abelian(images.size());
  return Homomorphism(Z, whole_group(*Z), std::move(codomain), std::move(images));
}

std::optional<CosetIntersection> abelian_case(NilpotentPresentation const& P,
                                              MalcevVector const& g1,
                                              FullFormSequence const& H,
                                              MalcevVector const& g2,
                                              FullFormSequence const& K) {
  PresentationPtr G = borrow(P);
  // g2^-1 g1 = h k with h in H, k in K, read off a preimage under
  // Z^{|H|+|K|} -> G.
  std::vector<MalcevVector> hk = H.rows;
  hk.insert(hk.end(), K.rows.begin(), K.rows.end());
  auto sum = from_free_abelian(hk, G);
  auto e = sum.preimage(P.multiply(P.inverse(g2), g1));
  if (!e) return std::nullopt;
  std::vector<Integer> eh(e->coords.begin(), e->coords.begin() + H.size());
  MalcevVector h = product_of_powers(P, H.rows, eh);
  CosetIntersection out;
  out.representative = P.multiply(g1, P.inverse(h));
  // H cap K = phi(ker phi') with phi': Z^n -> G -> G/K.
  QuotientMap q(G, K);
  std::vector<MalcevVector> images;
  for (auto const& u : H.rows) images.push_back(q.project(u));
  auto f = from_free_abelian(std::move(images), q.target());
  std::vector<MalcevVector> gens;
  for (auto const& p : f.kernel().rows) gens.push_back(product_of_powers(P, H.rows, p.coords));
  out.intersection = full_form(P, gens);
  return out;
}

}  // namespace

std::optional<CosetIntersection> coset_intersection(NilpotentPresentation const& P,
                                                    MalcevVector const& g1_in,
                                                    FullFormSequence const& H,
                                                    MalcevVector const& g2_in,
                                                    FullFormSequence const& K) {
  MalcevVector g1 = P.canonicalize(g1_in), g2 = P.canonicalize(g2_in);
  int const c = P.nilpotency_class();
  std::optional<CosetIntersection> result;
  if (c <= 1) {
    result = abelian_case(P, g1, H, g2, K);
  } else {
    PresentationPtr G = borrow(P);
    QuotientMap bar(G, series_term(P, c));
    NilpotentPresentation const& Q = *bar.target();
    auto project_all = [&](FullFormSequence const& S) {
      std::vector<MalcevVector> v;
      for (auto const& r : S.rows) v.push_back(bar.project(r));
      return v;
    };
    std::vector<MalcevVector> Hbar_gens = project_all(H), Kbar_gens = project_all(K);
    auto rec = coset_intersection(Q, bar.project(g1), full_form(Q, Hbar_gens),
                                  bar.project(g2), full_form(Q, Kbar_gens));
    if (!rec) return std::nullopt;
    Homomorphism onH(G, H, bar.target(), Hbar_gens);
    Homomorphism onK(G, K, bar.target(), Kbar_gens);
    auto x1 = onH.preimage(Q.multiply(Q.inverse(bar.project(g1)), rec->representative));
    auto x2 = onK.preimage(Q.multiply(Q.inverse(bar.project(g2)), rec->representative));
    if (!x1 || !x2) throw Error("internal error: coset representative has no preimage");
    MalcevVector gp = P.multiply(g1, *x1);
    MalcevVector c0 = P.multiply(P.inverse(gp), P.multiply(g2, *x2));
    std::size_t const top = P.series_start(c);
    if (c0.leading_index() < top) throw Error("internal error: c0 outside the top term");

    std::vector<MalcevVector> lh, lk;
    for (auto const& w : rec->intersection.rows) {
      auto u = onH.preimage(w), v = onK.preimage(w);
      if (!u || !v) throw Error("internal error: intersection has no preimage");
      lh.push_back(*u);
      lk.push_back(*v);
    }
    for (auto const& y : intersect_series(P, H, c).rows) lh.push_back(y);
    for (auto const& z : intersect_series(P, K, c).rows) lk.push_back(z);
    FullFormSequence LH = full_form(P, lh), LK = full_form(P, lk);
    std::vector<MalcevVector> u, y, v, z;
    for (std::size_t i = 0; i < LH.size(); ++i) {
      (LH.pivots[i] < top ? u : y).push_back(LH.rows[i]);
    }
    for (std::size_t i = 0; i < LK.size(); ++i) {
      (LK.pivots[i] < top ? v : z).push_back(LK.rows[i]);
    }
    if (u.size() != v.size()) throw Error("internal error: lifted intersections disagree");
    std::size_t const n = u.size();

    // Work in the abelian top term Gamma_c modulo M = Lambda cap K cap Gamma_c.
    FullFormSequence top_term = series_term(P, c);
    auto Cp = subgroup_presentation(P, top_term).target;
    auto coords = [&](MalcevVector const& g) {
      auto b = membership(P, top_term, g);
      if (!b) throw Error("internal error: element outside the top term");
      return MalcevVector(std::move(*b));
    };
    std::vector<MalcevVector> zc;
    for (auto const& zz : z) zc.push_back(coords(zz));
    QuotientMap mod(Cp, full_form(*Cp, zc));
    std::vector<MalcevVector> images;
    for (std::size_t i = 0; i < n; ++i) {
      MalcevVector ci = P.multiply(P.inverse(v[i]), u[i]);
      if (ci.leading_index() < top) throw Error("internal error: correction term outside the top term");
      images.push_back(mod.project(coords(ci)));
    }
    for (auto const& yy : y) images.push_back(mod.project(coords(yy)));
    auto psi = from_free_abelian(std::move(images), mod.target());
    auto alpha = psi.preimage(mod.project(coords(c0)));
    if (!alpha) return std::nullopt;

    std::vector<MalcevVector> theta_gens = u;
    theta_gens.insert(theta_gens.end(), y.begin(), y.end());
    CosetIntersection out;
    out.representative = P.multiply(gp, product_of_powers(P, theta_gens, alpha->coords));
    std::vector<MalcevVector> pis;
    for (auto const& p : psi.kernel().rows) {
      pis.push_back(product_of_powers(P, theta_gens, p.coords));
    }
    out.intersection = full_form(P, pis);
    result = std::move(out);
  }
  if (result) {
    result->representative = coset_representative(P, result->intersection, result->representative);
    MalcevVector const& g = result->representative;
    if (!contains(P, H, P.multiply(P.inverse(g1), g)) ||
        !contains(P, K, P.multiply(P.inverse(g2), g))) {
      throw Error("internal error: coset representative check failed");
    }
    for (auto const& r : result->intersection.rows) {
      if (!contains(P, H, r) || !contains(P, K, r)) {
        throw Error("internal error: intersection generator check failed");
      }
    }
  }
  return result;
}

FullFormSequence subgroup_intersection(NilpotentPresentation const& P, FullFormSequence const& H,
                                       FullFormSequence const& K) {
  auto r = coset_intersection(P, P.identity(), H, P.identity(), K);
  return r->intersection;
}

}  // namespace nilkit
