#include "nilkit/oracle.hpp"

#include <algorithm>

namespace nilkit {

FiniteGroupTable FiniteGroupTable::enumerate(PresentationPtr P, std::size_t cap) {
  FiniteGroupTable T;
  T.P_ = std::move(P);
  std::size_t n = 1;
  for (std::size_t i = 0; i < T.P_->size(); ++i) {
    auto const& e = T.P_->order(i);
    if (!e) throw Error("enumeration needs every generator order to be finite");
    if (*e > cap || n * e->get_ui() > cap) {
      throw Error("group order exceeds the enumeration cap of " + std::to_string(cap));
    }
    T.radix_.push_back(e->get_ui());
    n *= e->get_ui();
  }
  T.order_ = n;
  if (n <= 2048) {
    // a * b = (a * b') * a_j, where a_j is the last nonzero letter of b and
    // b' is b with that exponent lowered by one. Only right multiplications
    // by generators go through the presentation.
    std::size_t const m = T.radix_.size();
    std::vector<std::size_t> right(n * m), stride(m, 1);
    for (std::size_t j = m; j-- > 1;) stride[j - 1] = stride[j] * T.radix_[j];
    for (std::size_t a = 0; a < n; ++a) {
      MalcevVector x = T.element(a);
      for (std::size_t j = 0; j < m; ++j) {
        right[a * m + j] = T.index(T.P_->multiply(x, T.P_->generator(j)));
      }
    }
    T.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) T.table_[a * n] = a;
    for (std::size_t b = 1; b < n; ++b) {
      std::size_t j = m - 1;
      while ((b / stride[j]) % T.radix_[j] == 0) --j;
      std::size_t prev = b - stride[j];
      for (std::size_t a = 0; a < n; ++a) {
        T.table_[a * n + b] = right[T.table_[a * n + prev] * m + j];
      }
    }
    // The recurrence assumes associativity; spot-check it against direct
    // products.
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 512); ++i) {
      std::size_t a = (i * 7919) % n, b = (i * 104729 + 1) % n;
      if (T.table_[a * n + b] != T.index(T.P_->multiply(T.element(a), T.element(b)))) {
        throw Error("multiplication is not associative on the enumerated group");
      }
    }
  }
  T.inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) T.inverse_[a] = T.index(T.P_->inverse(T.element(a)));
  // Closure check: the table is a group of the expected order.
  for (std::size_t a = 0; a < n; ++a) {
    if (T.multiply(a, T.inverse_[a]) != 0) throw Error("enumerated table is not a group");
  }
  return T;
}

MalcevVector FiniteGroupTable::element(std::size_t index) const {
  MalcevVector v(radix_.size());
  for (std::size_t i = radix_.size(); i-- > 0;) {
    v[i] = static_cast<unsigned long>(index % radix_[i]);
    index /= radix_[i];
  }
  return v;
}

std::size_t FiniteGroupTable::index(MalcevVector const& g) const {
  MalcevVector c = P_->canonicalize(g);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) idx = idx * radix_[i] + c[i].get_ui();
  return idx;
}

std::size_t FiniteGroupTable::multiply(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a * order_ + b];
  return index(P_->multiply(element(a), element(b)));
}

FiniteGroupTable::Set FiniteGroupTable::closure(std::vector<std::size_t> const& gens) const {
  std::vector<bool> in(order_, false);
  std::vector<std::size_t> todo{0};
  in[0] = true;
  while (!todo.empty()) {
    std::size_t x = todo.back();
    todo.pop_back();
    for (std::size_t g : gens) {
      std::size_t y = multiply(x, g);
      if (!in[y]) {
        in[y] = true;
        todo.push_back(y);
      }
    }
  }
  Set out;
  for (std::size_t i = 0; i < order_; ++i) {
    if (in[i]) out.push_back(i);
  }
  return out;
}

FiniteGroupTable::Set FiniteGroupTable::closure(std::vector<MalcevVector> const& gens) const {
  std::vector<std::size_t> idx;
  for (auto const& g : gens) idx.push_back(index(g));
  return closure(idx);
}

FiniteGroupTable::Set FiniteGroupTable::all() const {
  Set s(order_);
  for (std::size_t i = 0; i < order_; ++i) s[i] = i;
  return s;
}

bool brute_membership(FiniteGroupTable const&, Set const& H, std::size_t g) {
  return std::binary_search(H.begin(), H.end(), g);
}

Set brute_conjugators(FiniteGroupTable const& T, std::size_t g, std::size_t h) {
  Set out;
  for (std::size_t x = 0; x < T.order(); ++x) {
    if (T.conjugate(g, x) == h) out.push_back(x);
  }
  return out;
}

std::optional<std::size_t> brute_conjugacy(FiniteGroupTable const& T, std::size_t g,
                                           std::size_t h) {
  for (std::size_t x = 0; x < T.order(); ++x) {
    if (T.conjugate(g, x) == h) return x;
  }
  return std::nullopt;
}

Set brute_centralizer(FiniteGroupTable const& T, std::vector<std::size_t> const& S) {
  Set out;
  for (std::size_t x = 0; x < T.order(); ++x) {
    bool ok = true;
    for (std::size_t s : S) ok = ok && T.multiply(x, s) == T.multiply(s, x);
    if (ok) out.push_back(x);
  }
  return out;
}

Set brute_conjugate_set(FiniteGroupTable const& T, Set const& H, std::size_t x) {
  Set out;
  for (std::size_t h : H) out.push_back(T.conjugate(h, x));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> brute_subgroup_conjugacy(FiniteGroupTable const& T, Set const& H,
                                                    Set const& K) {
  if (H.size() != K.size()) return std::nullopt;
  for (std::size_t x = 0; x < T.order(); ++x) {
    if (brute_conjugate_set(T, H, x) == K) return x;
  }
  return std::nullopt;
}

Set brute_normalizer(FiniteGroupTable const& T, Set const& K) {
  Set out;
  for (std::size_t x = 0; x < T.order(); ++x) {
    if (brute_conjugate_set(T, K, x) == K) out.push_back(x);
  }
  return out;
}

std::optional<std::size_t> brute_simultaneous_conjugacy(FiniteGroupTable const& T,
                                                        std::vector<std::size_t> const& A,
                                                        std::vector<std::size_t> const& B) {
  if (A.size() != B.size()) throw Error("tuples differ in length");
  for (std::size_t x = 0; x < T.order(); ++x) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < A.size(); ++i) ok = T.conjugate(A[i], x) == B[i];
    if (ok) return x;
  }
  return std::nullopt;
}

Set brute_coset_intersection(FiniteGroupTable const& T, std::size_t g1, Set const& H,
                             std::size_t g2, Set const& K) {
  Set left, right, out;
  for (std::size_t h : H) left.push_back(T.multiply(g1, h));
  for (std::size_t k : K) right.push_back(T.multiply(g2, k));
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                        std::back_inserter(out));
  return out;
}

Set brute_torsion(FiniteGroupTable const& T) {
  Set out;
  for (std::size_t g = 0; g < T.order(); ++g) {
    std::size_t x = g;
    for (std::size_t n = 1; n <= T.order(); ++n) {
      if (x == 0) {
        out.push_back(g);
        break;
      }
      x = T.multiply(x, g);
    }
  }
  return out;
}

Set brute_isolator(FiniteGroupTable const& T, Set const& H) {
  Set out;
  for (std::size_t g = 0; g < T.order(); ++g) {
    std::size_t x = g;
    for (std::size_t n = 1; n <= T.order(); ++n) {
      if (brute_membership(T, H, x)) {
        out.push_back(g);
        break;
      }
      x = T.multiply(x, g);
    }
  }
  return out;
}

}  // namespace nilkit
