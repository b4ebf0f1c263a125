#pragma once

#include <optional>
#include <vector>

#include "nilkit/subgroup.hpp"

namespace nilkit {

/// A homomorphism from a subgroup K of the domain group to the codomain,
/// given by the images of K's full-form rows.
///
/// Kernel and preimage work on the graph {(phi(k), k)} as a subgroup of
/// codomain x K, with codomain coordinates first.
class Homomorphism {
 public:
  /// Throws Error if the images do not respect the relators of K.
  Homomorphism(PresentationPtr domain, FullFormSequence K, PresentationPtr codomain,
               std::vector<MalcevVector> row_images);

  /// phi defined by images of an arbitrary generating list of K. Throws Error
  /// if the assignment does not extend to a homomorphism.
  static Homomorphism on_generators(PresentationPtr domain,
                                    std::vector<MalcevVector> const& gens,
                                    PresentationPtr codomain,
                                    std::vector<MalcevVector> const& images);

  NilpotentPresentation const& domain() const noexcept { return *domain_; }
  NilpotentPresentation const& codomain() const noexcept { return *codomain_; }
  FullFormSequence const& source_subgroup() const noexcept { return K_; }

  /// Throws Error if k is not in K.
  MalcevVector apply(MalcevVector const& k) const;
  /// Full form of the kernel, as a subgroup of the domain group.
  FullFormSequence kernel() const;
  /// Some k in K with phi(k) = h, or nullopt if h is not in the image.
  std::optional<MalcevVector> preimage(MalcevVector const& h) const;
  /// Full form of phi(K) in the codomain.
  FullFormSequence image() const;

 private:
  PresentationPtr domain_, codomain_;
  FullFormSequence K_;
  std::vector<MalcevVector> images_;
  PresentationPtr graph_group_;
  FullFormSequence graph_;
};

/// Non-owning handle for APIs that take shared presentations; `P` must
/// outlive every use of the result.
PresentationPtr borrow(NilpotentPresentation const& P);

/// Gamma_j / Gamma_{j+1} as an abelian presentation on the level-j
/// generators, repeated `copies` times (a direct power).
PresentationPtr section_presentation(NilpotentPresentation const& P, int j,
                                     std::size_t copies = 1);
/// Level-j coordinates of g (g must lie in Gamma_j for this to be its image
/// in the section).
MalcevVector section_block(NilpotentPresentation const& P, int j, MalcevVector const& g);

/// Full form of {x in G : [x, s] = 1 for every s in S}.
FullFormSequence centralizer(NilpotentPresentation const& P,
                             std::vector<MalcevVector> const& S);

/// Some x with x^-1 g x = h, or nullopt.
std::optional<MalcevVector> conjugacy_element(NilpotentPresentation const& P,
                                              MalcevVector const& g,
                                              MalcevVector const& h);

}  // namespace nilkit
