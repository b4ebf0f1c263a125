#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilkit/subgroup.hpp"

namespace nilkit {

/// <X | R> with relators kept in binary-exponent form.
struct FinitePresentation {
  std::vector<std::string> generators;
  std::vector<ExpWord> relators;

  /// "group x y | x^2, [x,y]" (the relator list may be empty).
  static FinitePresentation parse(std::string const& text);
  std::string to_text() const;
  Alphabet alphabet() const { return Alphabet(generators); }
};

/// Free nilpotent group of rank r and class c on Hall basic commutators,
/// ordered by weight and then by construction order. The first r basis
/// elements are the free generators; `definitions[i]` writes basis element i
/// as an iterated commutator of them.
struct FreeNilpotentGroup {
  PresentationPtr presentation;
  std::vector<ExpWord> definitions;
};

FreeNilpotentGroup free_nilpotent_group(std::size_t rank, int c);

/// Consistent nilpotent presentation of <X | R> / Gamma_{c+1}, which is the
/// group itself when it is nilpotent of class <= c. Each section
/// Gamma_i / Gamma_{i+1} gets an invariant-factor basis. `embed[x]` gives
/// the coordinates of generator x; `phi[y]` writes basis element y as a word
/// in X.
PresentationConversion build_nilpotent_presentation(FinitePresentation const& F, int c);

/// Least c <= max_class with Gamma_{c+1} = Gamma_{c+2}, assuming the group is
/// nilpotent; nullopt if no such c up to max_class.
std::optional<int> detect_nilpotency_class(FinitePresentation const& F, int max_class);

/// P rebased so that the basis of each section Gamma_l / Gamma_{l+1} is its
/// Smith-form (invariant-factor) basis: orders d_1 | d_2 | ... followed by
/// the infinite ones, with trivial factors dropped.
class InvariantFactorBasis {
 public:
  explicit InvariantFactorBasis(PresentationPtr source);

  PresentationPtr const& source() const noexcept { return source_; }
  PresentationPtr const& target() const noexcept { return target_; }
  /// Target coordinates of a source element.
  MalcevVector coordinates(MalcevVector const& g) const;
  /// Source element with the given target coordinates.
  MalcevVector element(MalcevVector const& coords) const;

 private:
  struct Level {
    std::size_t lo, hi;              // source columns of the section
    std::vector<std::size_t> kept;   // Smith columns with d != 1
    std::vector<std::vector<Integer>> V;
  };

  PresentationPtr source_;
  std::vector<Level> levels_;
  std::vector<MalcevVector> basis_;  // new generators as source elements
  std::vector<Order> orders_;
  PresentationPtr target_;
};

}  // namespace nilkit
