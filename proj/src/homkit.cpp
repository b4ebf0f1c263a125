#include "nilkit/homkit.hpp"

namespace nilkit {

PresentationPtr borrow(NilpotentPresentation const& P) {
  return PresentationPtr(std::shared_ptr<void>(), &P);
}

Homomorphism::Homomorphism(PresentationPtr domain, FullFormSequence K,
                           PresentationPtr codomain, std::vector<MalcevVector> row_images)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      K_(std::move(K)),
      images_(std::move(row_images)) {
  NilpotentPresentation const& C = *codomain_;
  if (images_.size() != K_.size()) throw Error("need one image per subgroup row");
  for (auto& x : images_) x = C.canonicalize(x);
  auto const Kp = subgroup_presentation(*domain_, K_).target;
  auto image_of = [&](MalcevVector const& b) {
    MalcevVector x = C.identity();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] != 0) x = C.multiply(x, C.power(images_[i], b[i]));
    }
    return x;
  };
  std::size_t const s = K_.size();
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      MalcevVector lhs = C.multiply(images_[j], images_[i]);
      MalcevVector rhs = C.multiply(C.multiply(images_[i], images_[j]),
                                    image_of(Kp->conjugate_tail(j, i)));
      if (!(lhs == rhs)) throw Error("images do not define a homomorphism");
    }
    if (auto const& e = Kp->order(j)) {
      if (!(C.power(images_[j], *e) == image_of(Kp->power_tail(j)))) {
        throw Error("images do not define a homomorphism");
      }
    }
  }
  graph_group_ = direct_product(C, *Kp);
  std::size_t const m1 = C.size();
  std::vector<MalcevVector> gens;
  for (std::size_t i = 0; i < s; ++i) {
    MalcevVector g(m1 + s);
    for (std::size_t l = 0; l < m1; ++l) g[l] = images_[i][l];
    g[m1 + i] = 1;
    gens.push_back(std::move(g));
  }
  graph_ = full_form(*graph_group_, gens);
}

Homomorphism Homomorphism::on_generators(PresentationPtr domain,
                                         std::vector<MalcevVector> const& gens,
                                         PresentationPtr codomain,
                                         std::vector<MalcevVector> const& images) {
  if (gens.size() != images.size()) throw Error("need one image per generator");
  FullFormSequence K = full_form(*domain, gens);
  std::vector<MalcevVector> row_images;
  for (auto const& e : K.expressions) {
    row_images.push_back(evaluate_expression(*codomain, e, images));
  }
  Homomorphism f(std::move(domain), std::move(K), codomain, std::move(row_images));
  for (std::size_t x = 0; x < gens.size(); ++x) {
    if (!(f.apply(gens[x]) == codomain->canonicalize(images[x]))) {
      throw Error("images do not define a homomorphism");
    }
  }
  return f;
}

MalcevVector Homomorphism::apply(MalcevVector const& k) const {
  auto b = membership(*domain_, K_, k);
  if (!b) throw Error("element is outside the domain of the homomorphism");
  NilpotentPresentation const& C = *codomain_;
  MalcevVector x = C.identity();
  for (std::size_t i = 0; i < b->size(); ++i) {
    if ((*b)[i] != 0) x = C.multiply(x, C.power(images_[i], (*b)[i]));
  }
  return x;
}

FullFormSequence Homomorphism::kernel() const {
  std::size_t const m1 = codomain_->size();
  std::vector<MalcevVector> gens;
  for (std::size_t r = 0; r < graph_.size(); ++r) {
    if (graph_.pivots[r] < m1) continue;
    std::vector<Integer> b(graph_.rows[r].coords.begin() + m1, graph_.rows[r].coords.end());
    gens.push_back(reassemble(*domain_, K_, b));
  }
  return full_form(*domain_, gens);
}

std::optional<MalcevVector> Homomorphism::preimage(MalcevVector const& h) const {
  NilpotentPresentation const& D = *graph_group_;
  std::size_t const m1 = codomain_->size();
  MalcevVector x(D.size());
  MalcevVector hc = codomain_->canonicalize(h);
  for (std::size_t l = 0; l < m1; ++l) x[l] = hc[l];
  MalcevVector used = D.identity();
  for (std::size_t r = 0; r < graph_.size(); ++r) {
    std::size_t p = x.leading_index();
    if (p >= m1) break;
    if (graph_.pivots[r] < p) continue;
    if (graph_.pivots[r] != p || !divides(graph_.pivot_entry(r), x[p])) return std::nullopt;
    Integer b = x[p] / graph_.pivot_entry(r);
    MalcevVector step = D.power(graph_.rows[r], b);
    used = D.multiply(used, step);
    x = D.multiply(D.inverse(step), x);
  }
  if (x.leading_index() < m1) return std::nullopt;
  std::vector<Integer> b(used.coords.begin() + m1, used.coords.end());
  MalcevVector k = reassemble(*domain_, K_, b);
  if (!(apply(k) == hc)) throw Error("internal error: preimage check failed");
  return k;
}

FullFormSequence Homomorphism::image() const { return full_form(*codomain_, images_); }

// Sections of the central series ----------------------------------------------

PresentationPtr section_presentation(NilpotentPresentation const& P, int j,
                                     std::size_t copies) {
  std::size_t const lo = P.series_start(j), hi = P.series_start(j + 1);
  std::size_t const w = hi - lo;
  PresentationData d;
  d.nilpotency_class = w * copies > 0 ? 1 : 0;
  for (std::size_t c = 0; c < copies; ++c) {
    for (std::size_t i = lo; i < hi; ++i) {
      std::size_t k = c * w + (i - lo);
      d.generators.push_back({P.order(i), 1});
      if (P.order(i)) {
        MalcevVector t(w * copies);
        for (std::size_t l = lo; l < hi; ++l) t[c * w + (l - lo)] = P.power_tail(i)[l];
        d.powers[k] = std::move(t);
      }
    }
  }
  return make_presentation(std::move(d));
}

MalcevVector section_block(NilpotentPresentation const& P, int j, MalcevVector const& g) {
  std::size_t const lo = P.series_start(j), hi = P.series_start(j + 1);
  return MalcevVector(std::vector<Integer>(g.coords.begin() + lo, g.coords.begin() + hi));
}

namespace {

// Narrows D = {x : [x,s] in Gamma_j for all s} to the elements with
// [x,s] in Gamma_{j+1}.
FullFormSequence narrow(NilpotentPresentation const& P, FullFormSequence const& D,
                        std::vector<MalcevVector> const& S, int j) {
  std::size_t const w = P.series_start(j + 1) - P.series_start(j);
  if (w == 0 || S.empty()) return D;
  auto A = section_presentation(P, j, S.size());
  std::vector<MalcevVector> images;
  bool trivial = true;
  for (auto const& x : D.rows) {
    MalcevVector img(w * S.size());
    for (std::size_t c = 0; c < S.size(); ++c) {
      MalcevVector b = section_block(P, j, P.commutator(x, S[c]));
      for (std::size_t l = 0; l < w; ++l) img[c * w + l] = b[l];
    }
    trivial = trivial && img.is_identity();
    images.push_back(std::move(img));
  }
  if (trivial) return D;
  return Homomorphism(borrow(P), D, A, std::move(images)).kernel();
}

}  // namespace

FullFormSequence centralizer(NilpotentPresentation const& P,
                             std::vector<MalcevVector> const& S) {
  FullFormSequence D = whole_group(P);
  for (int j = 2; j <= P.nilpotency_class(); ++j) D = narrow(P, D, S, j);
  return D;
}

std::optional<MalcevVector> conjugacy_element(NilpotentPresentation const& P,
                                              MalcevVector const& g0,
                                              MalcevVector const& h0) {
  MalcevVector g = P.canonicalize(g0), h = P.canonicalize(h0);
  std::size_t const s2 = P.series_start(2);
  for (std::size_t l = 0; l < s2; ++l) {
    if (g[l] != h[l]) return std::nullopt;
  }
  MalcevVector x = P.identity();
  int const c = P.nilpotency_class();
  for (int j = 2; j <= c; ++j) {
    MalcevVector gx = P.conjugate(g, x);
    MalcevVector t = section_block(P, j, P.multiply(P.inverse(gx), h));
    if (t.is_identity()) continue;
    // y ranges over {y : [gx, y] in Gamma_j}, where y -> [gx, y] mod
    // Gamma_{j+1} is a homomorphism into the abelian section.
    FullFormSequence D = whole_group(P);
    for (int k = 2; k < j; ++k) D = narrow(P, D, {gx}, k);
    std::vector<MalcevVector> images;
    for (auto const& y : D.rows) images.push_back(section_block(P, j, P.commutator(gx, y)));
    Homomorphism f(borrow(P), D, section_presentation(P, j), std::move(images));
    auto y = f.preimage(t);
    if (!y) return std::nullopt;
    x = P.multiply(x, *y);
  }
  if (!(P.conjugate(g, x) == h)) throw Error("internal error: conjugator check failed");
  return x;
}

}  // namespace nilkit
