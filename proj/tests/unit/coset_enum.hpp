#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "nilkit/builder.hpp"

namespace testing {

/// Order of <X | R> by Todd-Coxeter enumeration over the trivial subgroup
/// (HLT strategy). nullopt if more than `cap` cosets get defined.
class CosetEnumerator {
 public:
  CosetEnumerator(std::size_t gens, std::vector<std::vector<int>> relators, std::size_t cap)
      : cols_(2 * gens), rels_(std::move(relators)), cap_(cap) {}

  std::optional<std::size_t> run() {
    new_coset();
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      for (auto const& r : rels_) {
        if (!live(c)) break;
        if (!scan_and_fill(c, r)) return std::nullopt;
      }
      for (std::size_t x = 0; x < cols_ && live(c); ++x) {
        if (table_[c][x] < 0 && !define(c, x)) return std::nullopt;
      }
    }
    std::size_t n = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c) n += live(c);
    return n;
  }

 private:
  static std::size_t inv(std::size_t x) { return x ^ 1; }
  bool live(std::size_t c) const { return parent_[c] == c; }

  void new_coset() {
    parent_.push_back(parent_.size());
    table_.emplace_back(cols_, -1);
  }
  bool define(std::size_t c, std::size_t x) {
    if (parent_.size() >= cap_) return false;
    new_coset();
    std::size_t d = parent_.size() - 1;
    table_[c][x] = static_cast<std::int64_t>(d);
    table_[d][inv(x)] = static_cast<std::int64_t>(c);
    return true;
  }
  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::size_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }
  void merge(std::size_t a, std::size_t b, std::deque<std::size_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }
  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      std::size_t e = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < cols_; ++x) {
        if (table_[e][x] < 0) continue;
        auto f = static_cast<std::size_t>(table_[e][x]);
        table_[f][inv(x)] = -1;
        std::size_t e1 = rep(e), f1 = rep(f);
        if (table_[e1][x] >= 0) {
          merge(f1, static_cast<std::size_t>(table_[e1][x]), queue);
        } else if (table_[f1][inv(x)] >= 0) {
          merge(e1, static_cast<std::size_t>(table_[f1][inv(x)]), queue);
        } else {
          table_[e1][x] = static_cast<std::int64_t>(f1);
          table_[f1][inv(x)] = static_cast<std::int64_t>(e1);
        }
      }
    }
  }
  // Letters are 2g (generator g) and 2g+1 (its inverse).
  bool scan_and_fill(std::size_t c, std::vector<int> const& w) {
    std::size_t f = c, b = c;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    auto at = [&](long k) { return static_cast<std::size_t>(w[static_cast<std::size_t>(k)]); };
    while (true) {
      while (i <= j && table_[f][at(i)] >= 0) f = static_cast<std::size_t>(table_[f][at(i++)]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && table_[b][inv(at(j))] >= 0) b = static_cast<std::size_t>(table_[b][inv(at(j--))]);
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        table_[f][at(i)] = static_cast<std::int64_t>(b);
        table_[b][inv(at(i))] = static_cast<std::int64_t>(f);
        return true;
      }
      if (!define(f, at(i))) return false;
    }
  }

  std::size_t cols_;
  std::vector<std::vector<int>> rels_;
  std::size_t cap_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::int64_t>> table_;
};

inline std::vector<int> letters_of(nilkit::ExpWord const& w) {
  std::vector<int> out;
  for (auto const& l : w.expand(nilkit::Integer(1) << 20).letters) {
    int code = static_cast<int>(2 * l.gen) + (l.exponent < 0 ? 1 : 0);
    for (long k = 0, n = std::abs(l.exponent.get_si()); k < n; ++k) out.push_back(code);
  }
  return out;
}

inline std::optional<std::size_t> enumerate_order(nilkit::FinitePresentation const& F,
                                                  std::size_t cap = 200000) {
  std::vector<std::vector<int>> rels;
  for (auto const& r : F.relators) rels.push_back(letters_of(r));
  return CosetEnumerator(F.generators.size(), std::move(rels), cap).run();
}

/// Random presentation on up to `max_gens` generators with a few short
/// relators of small exponent.
inline nilkit::FinitePresentation random_finite_presentation(std::mt19937_64& rng,
                                                             std::size_t max_gens = 3) {
  using nilkit::ExpWord;
  nilkit::FinitePresentation F;
  std::size_t r = std::uniform_int_distribution<std::size_t>(1, max_gens)(rng);
  char const* names[] = {"x", "y", "z"};
  for (std::size_t i = 0; i < r; ++i) F.generators.push_back(names[i]);
  std::uniform_int_distribution<std::size_t> gen(0, r - 1);
  std::uniform_int_distribution<int> exp(-3, 3), count(0, 3), len(1, 4);
  for (int k = count(rng); k > 0; --k) {
    ExpWord w;
    for (int t = len(rng); t > 0; --t) {
      int e = exp(rng);
      if (e != 0) w.append(ExpWord::letter(gen(rng), e));
    }
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
      w = nilkit::commutator(ExpWord::letter(gen(rng)), w);
    }
    F.relators.push_back(std::move(w));
  }
  return F;
}

/// Finite class-2 presentation: x_i^{e_i}, all [[x_i,x_j],x_k], plus a
/// random extra relator.
inline nilkit::FinitePresentation random_class2_finite(std::mt19937_64& rng) {
  using nilkit::ExpWord;
  nilkit::FinitePresentation F = random_finite_presentation(rng, 3);
  std::size_t r = F.generators.size();
  int hi = r == 3 ? 3 : 6;
  std::uniform_int_distribution<int> e(2, hi);
  for (std::size_t i = 0; i < r; ++i) F.relators.push_back(ExpWord::letter(i, e(rng)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      for (std::size_t k = 0; k < r; ++k) {
        F.relators.push_back(nilkit::commutator(
            nilkit::commutator(ExpWord::letter(i), ExpWord::letter(j)), ExpWord::letter(k)));
      }
    }
  }
  return F;
}

}  // namespace testing
