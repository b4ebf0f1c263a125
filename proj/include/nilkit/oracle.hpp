#pragma once

#include <optional>
#include <vector>

#include "nilkit/presentation.hpp"

namespace nilkit {

/// Exhaustive reference implementations over a finite group given by a
/// nilpotent presentation with every order finite. Everything here is
/// definitional and O(|G|^k); it exists to cross-check the real algorithms.
class FiniteGroupTable {
 public:
  static constexpr std::size_t kDefaultCap = 10000;
  using Set = std::vector<std::size_t>;  // sorted element indices

  /// Throws Error if some order is infinite or the group exceeds `cap`.
  static FiniteGroupTable enumerate(PresentationPtr P, std::size_t cap = kDefaultCap);

  NilpotentPresentation const& presentation() const noexcept { return *P_; }
  std::size_t order() const noexcept { return order_; }
  MalcevVector element(std::size_t index) const;
  std::size_t index(MalcevVector const& g) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t identity() const noexcept { return 0; }
  std::size_t conjugate(std::size_t g, std::size_t x) const {
    return multiply(inverse(x), multiply(g, x));
  }

  /// Subgroup generated by `gens`.
  Set closure(std::vector<std::size_t> const& gens) const;
  Set closure(std::vector<MalcevVector> const& gens) const;
  Set all() const;

 private:
  FiniteGroupTable() = default;

  PresentationPtr P_;
  std::size_t order_ = 0;
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> table_;  // order^2 entries when small
  std::vector<std::size_t> inverse_;
};

using Set = FiniteGroupTable::Set;

bool brute_membership(FiniteGroupTable const& T, Set const& H, std::size_t g);
/// All x with x^-1 g x = h.
Set brute_conjugators(FiniteGroupTable const& T, std::size_t g, std::size_t h);
std::optional<std::size_t> brute_conjugacy(FiniteGroupTable const& T, std::size_t g,
                                           std::size_t h);
Set brute_centralizer(FiniteGroupTable const& T, std::vector<std::size_t> const& S);
/// Set conjugate H^x = {x^-1 h x}.
Set brute_conjugate_set(FiniteGroupTable const& T, Set const& H, std::size_t x);
std::optional<std::size_t> brute_subgroup_conjugacy(FiniteGroupTable const& T, Set const& H,
                                                    Set const& K);
Set brute_normalizer(FiniteGroupTable const& T, Set const& K);
/// Some x with a_i^x = b_i for all i.
std::optional<std::size_t> brute_simultaneous_conjugacy(FiniteGroupTable const& T,
                                                        std::vector<std::size_t> const& A,
                                                        std::vector<std::size_t> const& B);
/// g1 H cap g2 K as a set.
Set brute_coset_intersection(FiniteGroupTable const& T, std::size_t g1, Set const& H,
                             std::size_t g2, Set const& K);
/// Elements of finite order (all of a finite group, by definition).
Set brute_torsion(FiniteGroupTable const& T);
/// {g : g^n in H for some n >= 1}.
Set brute_isolator(FiniteGroupTable const& T, Set const& H);

}  // namespace nilkit
