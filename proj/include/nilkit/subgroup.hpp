#pragma once

#include <optional>
#include <vector>

#include "nilkit/presentation.hpp"

namespace nilkit {

/// Echelon generating sequence h_1..h_s of a subgroup H.
///
/// Rows are sorted by pivot (leading index), pivots are positive and divide
/// e_pivot on torsion columns, and entries of a row in later pivot columns lie
/// in [0, pivot). Every h in H is uniquely h_1^b_1 ... h_s^b_s with
/// 0 <= b_i < e_{pi_i} / pivot_i on torsion pivots. The sequence is therefore
/// a canonical form of H: two subgroups are equal iff their rows are.
struct FullFormSequence {
  std::vector<MalcevVector> rows;
  std::vector<std::size_t> pivots;
  /// Row i as a word in the generators the sequence was built from
  /// (generator t of the word stands for inputs[t]).
  std::vector<ExpWord> expressions;
  std::vector<MalcevVector> inputs;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
  Integer const& pivot_entry(std::size_t i) const { return rows[i][pivots[i]]; }

  /// Same subgroup (expressions are ignored).
  friend bool operator==(FullFormSequence const& a, FullFormSequence const& b) {
    return a.rows == b.rows;
  }
};

/// Full form of <gens>. Deterministic: the rows depend only on the subgroup.
FullFormSequence full_form(NilpotentPresentation const& P,
                           std::vector<MalcevVector> const& gens);

/// Full form of the whole group.
FullFormSequence whole_group(NilpotentPresentation const& P);

/// Relative order of row i: e_{pi_i} / pivot for torsion pivots, else infinite.
Order row_order(NilpotentPresentation const& P, FullFormSequence const& H, std::size_t i);

/// Exponents b with g = h_1^b_1 ... h_s^b_s in canonical ranges, or nullopt.
std::optional<std::vector<Integer>> membership(NilpotentPresentation const& P,
                                               FullFormSequence const& H,
                                               MalcevVector const& g);
bool contains(NilpotentPresentation const& P, FullFormSequence const& H,
              MalcevVector const& g);
/// h_1^b_1 ... h_s^b_s
MalcevVector reassemble(NilpotentPresentation const& P, FullFormSequence const& H,
                        std::vector<Integer> const& b);

/// Canonical representative of the left coset gH: sifting g by the rows
/// of H leaves every pivot coordinate in [0, pivot entry).
MalcevVector coset_representative(NilpotentPresentation const& P, FullFormSequence const& H,
                                  MalcevVector const& g);

/// Evaluates an expression word whose generator t stands for gens[t]. Shared
/// subexpressions are evaluated once.
MalcevVector evaluate_expression(NilpotentPresentation const& P, ExpWord const& w,
                                 std::vector<MalcevVector> const& gens);

/// Rows of H whose pivot has level >= j: the full form of H and Gamma_j.
/// The result is its own input list (expressions are single letters).
FullFormSequence intersect_series(NilpotentPresentation const& P,
                                  FullFormSequence const& H, int j);

/// Full form of <H, K>; expressions are over H's rows followed by K's rows.
FullFormSequence join(NilpotentPresentation const& P, FullFormSequence const& H,
                      FullFormSequence const& K);

/// Largest j with H and Gamma_j nontrivial. Throws for the trivial subgroup.
int max_series_level(NilpotentPresentation const& P, FullFormSequence const& H);

bool is_subgroup(NilpotentPresentation const& P, FullFormSequence const& H,
                 FullFormSequence const& K);
/// True iff every conjugate of every row by a generator stays in H.
bool is_normal(NilpotentPresentation const& P, FullFormSequence const& H);
/// Full form of the normal closure of <gens>.
FullFormSequence normal_closure(NilpotentPresentation const& P,
                                std::vector<MalcevVector> const& gens);

/// Gamma_j = <a_i : level(a_i) >= j>.
FullFormSequence series_term(NilpotentPresentation const& P, int j);

/// The group of a subgroup, quotient or converted presentation together with
/// translation maps. `embed[x]` is the image of source generator x in the
/// target; `phi[y]` writes target generator y as a word in source generators.
struct PresentationConversion {
  PresentationPtr target;
  std::vector<MalcevVector> embed;
  std::vector<ExpWord> phi;
};

/// Presentation of H on its rows: target coordinates are the exponents b of
/// membership(), and reassemble() maps them back. Source generators are the
/// inputs H was built from.
PresentationConversion subgroup_presentation(NilpotentPresentation const& P,
                                             FullFormSequence const& H);

}  // namespace nilkit
