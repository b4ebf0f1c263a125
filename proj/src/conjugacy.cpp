#include "nilkit/conjugacy.hpp"

#include "nilkit/cosets.hpp"
#include "nilkit/homkit.hpp"
#include "nilkit/quotient.hpp"

namespace nilkit {

namespace {

void require_commuting(NilpotentPresentation const& P, std::vector<MalcevVector> const& T) {
  for (std::size_t i = 0; i < T.size(); ++i) {
    for (std::size_t j = i + 1; j < T.size(); ++j) {
      if (!P.commutator(T[i], T[j]).is_identity()) {
        throw Error("conjugate_commuting_tuples: tuple entries " + std::to_string(i + 1) +
                    " and " + std::to_string(j + 1) + " do not commute");
      }
    }
  }
}

ConjugacyOutcome commuting_in_whole_group(NilpotentPresentation const& P,
                                          std::vector<MalcevVector> const& A,
                                          std::vector<MalcevVector> const& B) {
  if (A.empty()) return Conjugation{P.identity(), whole_group(P)};
  auto h = conjugacy_element(P, A[0], B[0]);
  if (!h) return std::nullopt;
  FullFormSequence C = centralizer(P, {B[0]});
  if (A.size() == 1) return Conjugation{*h, std::move(C)};
  std::vector<MalcevVector> rest_a, rest_b(B.begin() + 1, B.end());
  for (std::size_t i = 1; i < A.size(); ++i) rest_a.push_back(P.conjugate(A[i], *h));
  auto inner = conjugate_commuting_tuples(P, rest_a, rest_b, C);
  if (!inner) return std::nullopt;
  return Conjugation{P.multiply(*h, inner->witness), std::move(inner->stabilizer)};
}

std::vector<MalcevVector> project_rows(QuotientMap const& q, FullFormSequence const& S) {
  std::vector<MalcevVector> out;
  for (auto const& r : S.rows) out.push_back(q.project(r));
  return out;
}

ConjugacyOutcome subgroup_conjugacy_at(NilpotentPresentation const& P, FullFormSequence const& H,
                                       FullFormSequence const& K, ConjugacyStats* stats,
                                       int depth) {
  if (stats && depth > stats->max_depth) stats->max_depth = depth;
  if (H.empty() && K.empty()) return Conjugation{P.identity(), whole_group(P)};
  if (H.empty() || K.empty()) return std::nullopt;
  int const j = max_series_level(P, H);
  if (max_series_level(P, K) != j) return std::nullopt;
  FullFormSequence Hj = intersect_series(P, H, j), Kj = intersect_series(P, K, j);

  // H_j and K_j inject into G / Gamma_{j+1}, where conjugation acts trivially.
  PresentationPtr G = borrow(P);
  QuotientMap bar = truncation(G, j + 1);
  NilpotentPresentation const& Q = *bar.target();
  std::vector<MalcevVector> hbar = project_rows(bar, Hj), kbar = project_rows(bar, Kj);
  if (full_form(Q, hbar) != full_form(Q, kbar)) return std::nullopt;
  Homomorphism onK(G, Kj, bar.target(), kbar);
  std::vector<MalcevVector> ks;
  for (auto const& hb : hbar) {
    auto k = onK.preimage(hb);
    if (!k) throw Error("internal error: generator alignment failed");
    ks.push_back(std::move(*k));
  }
  auto step = conjugate_commuting_tuples(P, Hj.rows, ks);
  if (!step) return std::nullopt;
  MalcevVector const& x = step->witness;
  FullFormSequence const& Nj = step->stabilizer;  // C_G(K_j) = N_G(K_j)
  if (H.size() == Hj.size() && K.size() == Kj.size()) return step;

  // Remaining freedom is y in N_G(K_j); solve (H^x / K_j)^y = K / K_j there.
  auto conv = subgroup_presentation(P, Nj);
  NilpotentPresentation const& N = *conv.target;
  auto in_n = [&](MalcevVector const& g) {
    auto b = membership(P, Nj, g);
    if (!b) throw Error("internal error: element outside N_G(K_j)");
    return MalcevVector(std::move(*b));
  };
  std::vector<MalcevVector> kj_coords;
  for (auto const& r : Kj.rows) kj_coords.push_back(in_n(r));
  QuotientMap mod(conv.target, full_form(N, kj_coords));
  NilpotentPresentation const& R = *mod.target();
  std::vector<MalcevVector> hx, kk;
  for (auto const& r : H.rows) hx.push_back(mod.project(in_n(P.conjugate(r, x))));
  for (auto const& r : K.rows) kk.push_back(mod.project(in_n(r)));
  auto rec = subgroup_conjugacy_at(R, full_form(R, hx), full_form(R, kk), stats, depth + 1);
  if (!rec) return std::nullopt;
  auto to_g = [&](MalcevVector const& r) {
    return reassemble(P, Nj, mod.lift(r).coords);
  };
  std::vector<MalcevVector> normalizer_gens = Kj.rows;
  for (auto const& z : rec->stabilizer.rows) normalizer_gens.push_back(to_g(z));
  return Conjugation{P.multiply(x, to_g(rec->witness)), full_form(P, normalizer_gens)};
}

bool conjugates_into(NilpotentPresentation const& P, FullFormSequence const& H,
                     MalcevVector const& g, FullFormSequence const& K) {
  for (auto const& r : H.rows) {
    if (!contains(P, K, P.conjugate(r, g))) return false;
  }
  return true;
}

}  // namespace

ConjugacyOutcome conjugate_commuting_tuples(NilpotentPresentation const& P,
                                            std::vector<MalcevVector> const& A,
                                            std::vector<MalcevVector> const& B,
                                            std::optional<FullFormSequence> const& ambient) {
  if (A.size() != B.size()) throw Error("conjugate_commuting_tuples: tuple lengths differ");
  require_commuting(P, A);
  require_commuting(P, B);
  ConjugacyOutcome out;
  if (!ambient) {
    out = commuting_in_whole_group(P, A, B);
  } else {
    auto conv = subgroup_presentation(P, *ambient);
    std::vector<MalcevVector> a, b;
    for (auto const* T : {&A, &B}) {
      for (auto const& g : *T) {
        auto e = membership(P, *ambient, g);
        if (!e) throw Error("conjugate_commuting_tuples: tuple entry outside the ambient subgroup");
        (T == &A ? a : b).emplace_back(std::move(*e));
      }
    }
    auto inner = commuting_in_whole_group(*conv.target, a, b);
    if (inner) {
      std::vector<MalcevVector> stab;
      for (auto const& r : inner->stabilizer.rows) stab.push_back(reassemble(P, *ambient, r.coords));
      out = Conjugation{reassemble(P, *ambient, inner->witness.coords), full_form(P, stab)};
    }
  }
  if (out) {
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (P.conjugate(A[i], out->witness) != P.canonicalize(B[i])) {
        throw Error("internal error: tuple conjugator check failed");
      }
    }
    for (auto const& s : out->stabilizer.rows) {
      for (auto const& b : B) {
        if (!P.commutator(s, b).is_identity()) throw Error("internal error: centralizer check failed");
      }
    }
  }
  return out;
}

ConjugacyOutcome subgroup_conjugacy(NilpotentPresentation const& P, FullFormSequence const& H,
                                    FullFormSequence const& K, ConjugacyStats* stats) {
  auto out = subgroup_conjugacy_at(P, H, K, stats, 1);
  if (out) {
    MalcevVector gi = P.inverse(out->witness);
    if (!conjugates_into(P, H, out->witness, K) || !conjugates_into(P, K, gi, H)) {
      throw Error("internal error: subgroup conjugator check failed");
    }
    for (auto const& s : out->stabilizer.rows) {
      if (!conjugates_into(P, K, s, K) || !conjugates_into(P, K, P.inverse(s), K)) {
        throw Error("internal error: normalizer check failed");
      }
    }
  }
  return out;
}

FullFormSequence normalizer(NilpotentPresentation const& P, FullFormSequence const& K) {
  return subgroup_conjugacy(P, K, K)->stabilizer;
}

ConjugacyOutcome conjugate_tuples(NilpotentPresentation const& P,
                                  std::vector<MalcevVector> const& A,
                                  std::vector<MalcevVector> const& B) {
  if (A.size() != B.size()) throw Error("conjugate_tuples: tuple lengths differ");
  MalcevVector g = P.identity();
  FullFormSequence C = whole_group(P);
  // The solutions of a_i^x = b_i form the coset g_i C_G(b_i).
  for (std::size_t i = 0; i < A.size(); ++i) {
    auto gi = conjugacy_element(P, A[i], B[i]);
    if (!gi) return std::nullopt;
    auto r = coset_intersection(P, g, C, *gi, centralizer(P, {B[i]}));
    if (!r) return std::nullopt;
    g = std::move(r->representative);
    C = std::move(r->intersection);
  }
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (P.conjugate(A[i], g) != P.canonicalize(B[i])) {
      throw Error("internal error: tuple conjugator check failed");
    }
  }
  return Conjugation{std::move(g), std::move(C)};
}

}  // namespace nilkit
