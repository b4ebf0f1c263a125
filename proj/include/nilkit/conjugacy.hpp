#pragma once

#include <optional>
#include <vector>

#include "nilkit/subgroup.hpp"

namespace nilkit {

/// A verified conjugator. All conjugators form the coset witness * stabilizer,
/// where the stabilizer is the centralizer (tuples) or normalizer (subgroups)
/// of the target.
struct Conjugation {
  MalcevVector witness;
  FullFormSequence stabilizer;
};

/// nullopt: not conjugate.
using ConjugacyOutcome = std::optional<Conjugation>;

struct ConjugacyStats {
  int max_depth = 0;  // deepest subgroup_conjugacy recursion seen
};

/// g with a_i^g = b_i for all i, where both tuples are pairwise commuting,
/// plus the centralizer of B in `ambient` (default: the whole group). The
/// search for g is restricted to `ambient`, which must contain A and B.
/// Throws Error on tuples that do not commute or have different lengths.
ConjugacyOutcome conjugate_commuting_tuples(NilpotentPresentation const& P,
                                            std::vector<MalcevVector> const& A,
                                            std::vector<MalcevVector> const& B,
                                            std::optional<FullFormSequence> const& ambient = {});

/// g with H^g = K, plus N_G(K).
ConjugacyOutcome subgroup_conjugacy(NilpotentPresentation const& P, FullFormSequence const& H,
                                    FullFormSequence const& K, ConjugacyStats* stats = nullptr);

FullFormSequence normalizer(NilpotentPresentation const& P, FullFormSequence const& K);

/// g with a_i^g = b_i for arbitrary tuples, plus C_G(b_1, ..., b_l).
ConjugacyOutcome conjugate_tuples(NilpotentPresentation const& P,
                                  std::vector<MalcevVector> const& A,
                                  std::vector<MalcevVector> const& B);

}  // namespace nilkit
