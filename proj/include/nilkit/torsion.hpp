#pragma once

#include "nilkit/subgroup.hpp"

namespace nilkit {

struct TorsionData {
  FullFormSequence subgroup;
  PresentationConversion presentation;
  Integer order;
};

struct TowerStats {
  int torsion_steps = 0;    // T_1, T_2, ... computed before stabilizing
  int isolator_rounds = 0;  // passes of Y <- Is_{N(Y)}(Y), the last one unchanged
};

/// T(G), the elements of finite order. Built as the union of the tower
/// T_i = preimage of T(Z(G / T_{i-1})), which reaches T after at most c steps.
TorsionData torsion_subgroup(NilpotentPresentation const& P, TowerStats* stats = nullptr);

/// |T(G)|.
Integer torsion_order(NilpotentPresentation const& P);

/// Is_G(H) = {g : g^n in H for some n != 0}. Repeatedly adjoins the torsion
/// of N(Y)/Y to Y, starting from Y = H.
FullFormSequence isolator(NilpotentPresentation const& P, FullFormSequence const& H,
                          TowerStats* stats = nullptr);

}  // namespace nilkit
