#include "nilkit/quotient.hpp"

namespace nilkit {

QuotientMap::QuotientMap(PresentationPtr source, FullFormSequence N)
    : source_(std::move(source)), kernel_(std::move(N)) {
  NilpotentPresentation const& P = *source_;
  if (!is_normal(P, kernel_)) throw Error("subgroup is not normal");
  std::size_t const m = P.size();
  std::vector<Integer> pivot_of(m);
  for (std::size_t i = 0; i < kernel_.size(); ++i) {
    pivot_of[kernel_.pivots[i]] = kernel_.pivot_entry(i);
  }
  PresentationData d;
  d.nilpotency_class = 0;
  std::vector<std::size_t> target_index(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (pivot_of[i] == 1) continue;
    if (auto const& e = P.order(i); e && *e == 1) continue;
    target_index[i] = columns_.size();
    columns_.push_back(i);
    Order o = pivot_of[i] == 0 ? P.order(i) : Order(pivot_of[i]);
    d.generators.push_back({o, P.level(i)});
    d.nilpotency_class = std::max(d.nilpotency_class, P.level(i));
  }
  std::size_t const n = columns_.size();
  auto image = [&](MalcevVector const& g) {
    MalcevVector r = reduce(g);
    MalcevVector q(n);
    for (std::size_t k = 0; k < n; ++k) q[k] = r[columns_[k]];
    return q;
  };
  for (std::size_t l = 0; l < n; ++l) {
    MalcevVector const& al = P.generator(columns_[l]);
    for (std::size_t k = 0; k < l; ++k) {
      MalcevVector const& ak = P.generator(columns_[k]);
      MalcevVector t = image(P.multiply(P.inverse(P.multiply(ak, al)), P.multiply(al, ak)));
      if (!t.is_identity()) d.conjugates[{l, k}] = std::move(t);
    }
    if (auto const& e = d.generators[l].order) d.powers[l] = image(P.power(al, *e));
  }
  target_ = make_presentation(std::move(d));
}

MalcevVector QuotientMap::reduce(MalcevVector g) const {
  NilpotentPresentation const& P = *source_;
  g = P.canonicalize(g);
  for (std::size_t i = 0; i < kernel_.size(); ++i) {
    std::size_t p = kernel_.pivots[i];
    Integer q = floor_div(g[p], kernel_.pivot_entry(i));
    if (q != 0) g = P.multiply(g, P.power(kernel_.rows[i], -q));
  }
  return g;
}

MalcevVector QuotientMap::project(MalcevVector const& g) const {
  MalcevVector r = reduce(g);
  MalcevVector q(columns_.size());
  for (std::size_t k = 0; k < columns_.size(); ++k) q[k] = r[columns_[k]];
  return q;
}

MalcevVector QuotientMap::lift(MalcevVector const& q) const {
  if (q.size() != columns_.size()) throw Error("quotient element has wrong length");
  MalcevVector raw(source_->size());
  for (std::size_t k = 0; k < columns_.size(); ++k) raw[columns_[k]] = q[k];
  return source_->canonicalize(raw);
}

PresentationConversion QuotientMap::conversion() const {
  PresentationConversion c;
  c.target = target_;
  for (std::size_t i = 0; i < source_->size(); ++i) {
    c.embed.push_back(project(source_->generator(i)));
  }
  for (std::size_t col : columns_) c.phi.push_back(ExpWord::letter(col));
  return c;
}

PresentationConversion quotient_presentation(NilpotentPresentation const& P,
                                             FullFormSequence const& N) {
  return QuotientMap(std::make_shared<const NilpotentPresentation>(P), N).conversion();
}

QuotientMap truncation(PresentationPtr const& P, int j) {
  return QuotientMap(P, series_term(*P, j));
}

}  // namespace nilkit
