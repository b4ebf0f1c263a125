#include "nilkit/smith.hpp"

#include <utility>

namespace nilkit {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix I(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

IntMatrix multiply(IntMatrix const& a, IntMatrix const& b) {
  std::size_t const n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  IntMatrix c(n, std::vector<Integer>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

namespace {

class Reducer {
 public:
  Reducer(IntMatrix M, std::size_t cols)
      : r_(M.size()), n_(cols), D_(std::move(M)), U_(identity_matrix(r_)),
        V_(identity_matrix(n_)), Vi_(identity_matrix(n_)) {}

  SmithForm run() {
    std::size_t const k = std::min(r_, n_);
    for (std::size_t t = 0; t < k; ++t) {
      if (!move_smallest(t)) break;
      while (!clear(t)) {
        move_smallest(t);
      }
      if (D_[t][t] < 0) negate_row(t);
    }
    SmithForm out;
    out.rows = r_;
    out.cols = n_;
    out.D = std::move(D_);
    out.U = std::move(U_);
    out.V = std::move(V_);
    out.V_inverse = std::move(Vi_);
    return out;
  }

 private:
  // Moves the nonzero entry of least absolute value in the lower-right block
  // starting at (t, t) to (t, t). False if the block is zero.
  bool move_smallest(std::size_t t) {
    std::size_t bp = r_, bq = n_;
    for (std::size_t i = t; i < r_; ++i) {
      for (std::size_t j = t; j < n_; ++j) {
        if (D_[i][j] != 0 && (bp == r_ || abs(D_[i][j]) < abs(D_[bp][bq]))) bp = i, bq = j;
      }
    }
    if (bp == r_) return false;
    swap_rows(t, bp);
    swap_cols(t, bq);
    return true;
  }

  // Clears row and column t; true once d_t divides the rest of the block.
  bool clear(std::size_t t) {
    Integer const p = D_[t][t];
    bool done = true;
    for (std::size_t i = t + 1; i < r_; ++i) {
      if (D_[i][t] == 0) continue;
      add_row(i, t, -floor_div(D_[i][t], p));
      if (D_[i][t] != 0) done = false;
    }
    for (std::size_t j = t + 1; j < n_; ++j) {
      if (D_[t][j] == 0) continue;
      add_col(j, t, -floor_div(D_[t][j], p));
      if (D_[t][j] != 0) done = false;
    }
    if (!done) return false;
    for (std::size_t i = t + 1; i < r_; ++i) {
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (!divides(p, D_[i][j])) {
          add_row(t, i, 1);
          return false;
        }
      }
    }
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(D_[a], D_[b]);
    std::swap(U_[a], U_[b]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : D_) std::swap(row[a], row[b]);
    for (auto& row : V_) std::swap(row[a], row[b]);
    std::swap(Vi_[a], Vi_[b]);
  }
  // row_a += q row_b
  void add_row(std::size_t a, std::size_t b, Integer const& q) {
    for (std::size_t j = 0; j < n_; ++j) D_[a][j] += q * D_[b][j];
    for (std::size_t j = 0; j < r_; ++j) U_[a][j] += q * U_[b][j];
  }
  // col_a += q col_b
  void add_col(std::size_t a, std::size_t b, Integer const& q) {
    for (auto& row : D_) row[a] += q * row[b];
    for (auto& row : V_) row[a] += q * row[b];
    for (std::size_t j = 0; j < n_; ++j) Vi_[b][j] -= q * Vi_[a][j];
  }
  void negate_row(std::size_t t) {
    for (auto& x : D_[t]) x = -x;
    for (auto& x : U_[t]) x = -x;
  }

  std::size_t r_, n_;
  IntMatrix D_, U_, V_, Vi_;
};

}  // namespace

SmithForm smith_normal_form(IntMatrix const& M, std::size_t cols) {
  for (auto const& row : M) {
    if (row.size() != cols) throw Error("smith_normal_form: ragged matrix");
  }
  return Reducer(M, cols).run();
}

}  // namespace nilkit
