#include "nilkit/subgroup.hpp"

#include <deque>
#include <map>
#include <set>

namespace nilkit {

namespace {

using ExprPtr = std::shared_ptr<const ExpWord>;

ExprPtr const& empty_expr() {
  static ExprPtr const e = std::make_shared<const ExpWord>();
  return e;
}

ExprPtr expr_mul(ExprPtr const& a, ExprPtr const& b) {
  if (a->empty()) return b;
  if (b->empty()) return a;
  ExpWord w;
  w.terms = {ExpTerm{0, a, 1}, ExpTerm{0, b, 1}};
  return std::make_shared<const ExpWord>(std::move(w));
}

ExprPtr expr_pow(ExprPtr const& a, Integer const& n) {
  if (n == 0 || a->empty()) return empty_expr();
  if (n == 1) return a;
  ExpWord w;
  w.terms = {ExpTerm{0, a, n}};
  return std::make_shared<const ExpWord>(std::move(w));
}

struct Elem {
  MalcevVector v;
  ExprPtr e;
};

// Echelon rows indexed by pivot column, grown by sifting.
class Sifter {
 public:
  explicit Sifter(NilpotentPresentation const& P)
      : P_(P), m_(P.size()), rows_(m_), ids_(m_, 0) {}

  void add(Elem g) {
    queue_.push_back(std::move(g));
    drain();
  }

  // Adds commutators of row pairs until the rows are closed.
  void close() {
    drain();
    while (true) {
      bool pushed = false;
      std::vector<std::size_t> piv = pivots();
      for (std::size_t a = 0; a < piv.size(); ++a) {
        for (std::size_t b = a + 1; b < piv.size(); ++b) {
          auto key = std::make_pair(ids_[piv[a]], ids_[piv[b]]);
          if (!checked_.insert(key).second) continue;
          queue_.push_back(commutator(*rows_[piv[b]], *rows_[piv[a]]));
          pushed = true;
        }
      }
      if (!pushed) break;
      drain();
    }
  }

  FullFormSequence result(std::vector<MalcevVector> inputs) {
    std::vector<std::size_t> piv = pivots();
    // Reduce entries in later pivot columns into [0, pivot).
    for (std::size_t k = 0; k < piv.size(); ++k) {
      Elem const& rk = *rows_[piv[k]];
      Integer const& p = rk.v[piv[k]];
      for (std::size_t i = 0; i < k; ++i) {
        Elem& ri = *rows_[piv[i]];
        Integer q = floor_div(ri.v[piv[k]], p);
        if (q != 0) ri = product(ri, power(rk, -q));
      }
    }
    FullFormSequence H;
    H.inputs = std::move(inputs);
    for (std::size_t p : piv) {
      H.rows.push_back(rows_[p]->v);
      H.pivots.push_back(p);
      ExpWord w;
      if (!rows_[p]->e->empty()) w.terms = {ExpTerm{0, rows_[p]->e, 1}};
      H.expressions.push_back(std::move(w));
    }
    return H;
  }

 private:
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> piv;
    for (std::size_t p = 0; p < m_; ++p) {
      if (rows_[p]) piv.push_back(p);
    }
    return piv;
  }

  Elem product(Elem const& a, Elem const& b) const {
    return {P_.multiply(a.v, b.v), expr_mul(a.e, b.e)};
  }
  Elem power(Elem const& a, Integer const& n) const {
    return {P_.power(a.v, n), expr_pow(a.e, n)};
  }
  Elem commutator(Elem const& a, Elem const& b) const {
    return {P_.commutator(a.v, b.v),
            expr_mul(expr_mul(expr_pow(a.e, -1), expr_pow(b.e, -1)), expr_mul(a.e, b.e))};
  }

  void drain() {
    while (!queue_.empty()) {
      Elem g = std::move(queue_.front());
      queue_.pop_front();
      insert(std::move(g));
    }
  }

  void set_row(std::size_t p, Elem g) {
    rows_[p] = std::move(g);
    ids_[p] = ++next_id_;
    if (auto const& e = P_.order(p)) {
      Integer const& d = rows_[p]->v[p];
      if (d != *e) queue_.push_back(power(*rows_[p], *e / d));
    }
  }

  void insert(Elem g) {
    while (true) {
      std::size_t p = g.v.leading_index();
      if (p == m_) return;
      auto const& e = P_.order(p);
      if (!rows_[p]) {
        if (!e && g.v[p] < 0) g = power(g, -1);
        if (e) {
          Bezout bz = gcdext(g.v[p], *e);
          if (bz.g != g.v[p]) {
            Elem n = power(g, bz.x);
            queue_.push_back(product(power(n, -(g.v[p] / bz.g)), g));
            g = std::move(n);
          }
        }
        set_row(p, std::move(g));
        return;
      }
      Elem const& r = *rows_[p];
      Integer const a = r.v[p], b = g.v[p];
      if (divides(a, b)) {
        g = product(power(r, -(b / a)), g);
        continue;
      }
      Bezout bz = gcdext(a, b);
      Elem n = product(power(r, bz.x), power(g, bz.y));
      queue_.push_back(product(power(n, -(a / bz.g)), r));
      queue_.push_back(product(power(n, -(b / bz.g)), g));
      set_row(p, std::move(n));
      return;
    }
  }

  NilpotentPresentation const& P_;
  std::size_t m_;
  std::vector<std::optional<Elem>> rows_;
  std::vector<std::uint64_t> ids_;
  std::uint64_t next_id_ = 0;
  std::deque<Elem> queue_;
  std::set<std::pair<std::uint64_t, std::uint64_t>> checked_;
};

}  // namespace

FullFormSequence full_form(NilpotentPresentation const& P,
                           std::vector<MalcevVector> const& gens) {
  Sifter s(P);
  for (std::size_t t = 0; t < gens.size(); ++t) {
    if (gens[t].size() != P.size()) throw Error("generator has wrong length");
    s.add({P.canonicalize(gens[t]), std::make_shared<const ExpWord>(ExpWord::letter(t))});
  }
  s.close();
  return s.result(gens);
}

FullFormSequence whole_group(NilpotentPresentation const& P) {
  std::vector<MalcevVector> gens;
  for (std::size_t i = 0; i < P.size(); ++i) gens.push_back(P.generator(i));
  return full_form(P, gens);
}

Order row_order(NilpotentPresentation const& P, FullFormSequence const& H,
                std::size_t i) {
  auto const& e = P.order(H.pivots[i]);
  if (!e) return std::nullopt;
  return Integer(*e / H.pivot_entry(i));
}

std::optional<std::vector<Integer>> membership(NilpotentPresentation const& P,
                                               FullFormSequence const& H,
                                               MalcevVector const& g) {
  if (g.size() != P.size()) throw Error("element has wrong length");
  std::vector<Integer> b(H.size());
  MalcevVector x = P.canonicalize(g);
  std::size_t i = 0;
  while (true) {
    std::size_t p = x.leading_index();
    if (p == x.size()) return b;
    while (i < H.size() && H.pivots[i] < p) ++i;
    if (i == H.size() || H.pivots[i] != p) return std::nullopt;
    if (!divides(H.pivot_entry(i), x[p])) return std::nullopt;
    b[i] = x[p] / H.pivot_entry(i);
    x = P.multiply(P.power(H.rows[i], -b[i]), x);
  }
}

bool contains(NilpotentPresentation const& P, FullFormSequence const& H,
              MalcevVector const& g) {
  return membership(P, H, g).has_value();
}

MalcevVector reassemble(NilpotentPresentation const& P, FullFormSequence const& H,
                        std::vector<Integer> const& b) {
  if (b.size() != H.size()) throw Error("exponent vector has wrong length");
  MalcevVector x = P.identity();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != 0) x = P.multiply(x, P.power(H.rows[i], b[i]));
  }
  return x;
}

namespace {

MalcevVector eval_memo(NilpotentPresentation const& P, ExpWord const& w,
                       std::vector<MalcevVector> const& gens,
                       std::map<ExpWord const*, MalcevVector>& memo) {
  MalcevVector x = P.identity();
  for (auto const& t : w.terms) {
    if (t.sub) {
      auto it = memo.find(t.sub.get());
      if (it == memo.end()) {
        it = memo.emplace(t.sub.get(), eval_memo(P, *t.sub, gens, memo)).first;
      }
      x = P.multiply(x, P.power(it->second, t.exponent));
    } else {
      if (t.gen >= gens.size()) throw Error("expression refers to an unknown input");
      x = P.multiply(x, P.power(gens[t.gen], t.exponent));
    }
  }
  return x;
}

}  // namespace

MalcevVector coset_representative(NilpotentPresentation const& P, FullFormSequence const& H,
                                  MalcevVector const& g) {
  MalcevVector r = P.canonicalize(g);
  for (std::size_t i = 0; i < H.size(); ++i) {
    Integer q = floor_div(r[H.pivots[i]], H.pivot_entry(i));
    if (q != 0) r = P.multiply(r, P.power(H.rows[i], -q));
  }
  return r;
}

MalcevVector evaluate_expression(NilpotentPresentation const& P, ExpWord const& w,
                                 std::vector<MalcevVector> const& gens) {
  std::map<ExpWord const*, MalcevVector> memo;
  return eval_memo(P, w, gens, memo);
}

FullFormSequence intersect_series(NilpotentPresentation const& P,
                                  FullFormSequence const& H, int j) {
  FullFormSequence r;
  for (std::size_t i = 0; i < H.size(); ++i) {
    if (P.level(H.pivots[i]) >= j) {
      r.expressions.push_back(ExpWord::letter(r.rows.size()));
      r.rows.push_back(H.rows[i]);
      r.pivots.push_back(H.pivots[i]);
    }
  }
  r.inputs = r.rows;
  return r;
}

FullFormSequence join(NilpotentPresentation const& P, FullFormSequence const& H,
                      FullFormSequence const& K) {
  std::vector<MalcevVector> gens = H.rows;
  gens.insert(gens.end(), K.rows.begin(), K.rows.end());
  return full_form(P, gens);
}

int max_series_level(NilpotentPresentation const& P, FullFormSequence const& H) {
  if (H.empty()) throw Error("series level of the trivial subgroup is undefined");
  return P.level(H.pivots.back());
}

bool is_subgroup(NilpotentPresentation const& P, FullFormSequence const& H,
                 FullFormSequence const& K) {
  for (auto const& h : H.rows) {
    if (!contains(P, K, h)) return false;
  }
  return true;
}

bool is_normal(NilpotentPresentation const& P, FullFormSequence const& H) {
  for (auto const& h : H.rows) {
    for (std::size_t i = 0; i < P.size(); ++i) {
      MalcevVector const& a = P.generator(i);
      if (!contains(P, H, P.conjugate(h, a))) return false;
      if (!contains(P, H, P.conjugate(h, P.inverse(a)))) return false;
    }
  }
  return true;
}

FullFormSequence normal_closure(NilpotentPresentation const& P,
                                std::vector<MalcevVector> const& gens) {
  FullFormSequence H = full_form(P, gens);
  while (true) {
    std::vector<MalcevVector> extra;
    for (auto const& h : H.rows) {
      for (std::size_t i = 0; i < P.size(); ++i) {
        MalcevVector const& a = P.generator(i);
        for (MalcevVector c : {P.conjugate(h, a), P.conjugate(h, P.inverse(a))}) {
          if (!contains(P, H, c)) extra.push_back(std::move(c));
        }
      }
    }
    if (extra.empty()) break;
    extra.insert(extra.begin(), H.rows.begin(), H.rows.end());
    H = full_form(P, extra);
  }
  return H;
}

FullFormSequence series_term(NilpotentPresentation const& P, int j) {
  std::vector<MalcevVector> gens;
  for (std::size_t i = P.series_start(j); i < P.size(); ++i) gens.push_back(P.generator(i));
  return full_form(P, gens);
}

PresentationConversion subgroup_presentation(NilpotentPresentation const& P,
                                             FullFormSequence const& H) {
  std::size_t const s = H.size();
  auto coords = [&](MalcevVector const& g) {
    auto b = membership(P, H, g);
    if (!b) throw Error("internal error: subgroup is not closed");
    return MalcevVector(std::move(*b));
  };
  PresentationData d;
  d.nilpotency_class = 0;
  for (std::size_t i = 0; i < s; ++i) {
    int level = P.level(H.pivots[i]);
    d.generators.push_back({row_order(P, H, i), level});
    d.nilpotency_class = std::max(d.nilpotency_class, level);
  }
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      MalcevVector t = P.multiply(P.inverse(P.multiply(H.rows[i], H.rows[j])),
                                  P.multiply(H.rows[j], H.rows[i]));
      if (!t.is_identity()) d.conjugates[{j, i}] = coords(t);
    }
    if (auto const& e = d.generators[j].order) {
      d.powers[j] = coords(P.power(H.rows[j], *e));
    }
  }
  PresentationConversion conv;
  conv.target = make_presentation(std::move(d));
  for (auto const& x : H.inputs) conv.embed.push_back(coords(x));
  conv.phi = H.expressions;
  return conv;
}

}  // namespace nilkit
