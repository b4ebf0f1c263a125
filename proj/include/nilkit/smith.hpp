#pragma once

#include <vector>

#include "nilkit/integer.hpp"

namespace nilkit {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(IntMatrix const& a, IntMatrix const& b);

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... with
/// nonnegative entries (zeros last). `V_inverse` is V^-1.
struct SmithForm {
  IntMatrix D, U, V, V_inverse;
  std::size_t rows = 0, cols = 0;
  Integer const& diagonal(std::size_t i) const { return D[i][i]; }
};

SmithForm smith_normal_form(IntMatrix const& M, std::size_t cols);

}  // namespace nilkit
