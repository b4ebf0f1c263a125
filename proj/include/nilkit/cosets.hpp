#pragma once

#include <optional>

#include "nilkit/subgroup.hpp"

namespace nilkit {

/// g1 H cap g2 K = representative * (H cap K).
struct CosetIntersection {
  MalcevVector representative;
  FullFormSequence intersection;
};

/// Nonempty intersections come back as representative plus H cap K, with
/// the representative canonical for its coset (see coset_representative);
/// nullopt means the cosets are disjoint. Works by induction on the class,
/// lifting a solution in G / Gamma_c through the central top term.
std::optional<CosetIntersection> coset_intersection(NilpotentPresentation const& P,
                                                    MalcevVector const& g1,
                                                    FullFormSequence const& H,
                                                    MalcevVector const& g2,
                                                    FullFormSequence const& K);

/// H cap K.
FullFormSequence subgroup_intersection(NilpotentPresentation const& P, FullFormSequence const& H,
                                       FullFormSequence const& K);

}  // namespace nilkit
