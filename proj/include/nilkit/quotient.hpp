#pragma once

#include <vector>

#include "nilkit/subgroup.hpp"

namespace nilkit {

/// G -> G/N for a normal subgroup N given in full form.
///
/// Target generator k is the image of a_{columns[k]}. Columns where N has no
/// pivot keep their order, pivot columns with pivot p > 1 get order p, and
/// pivot columns with pivot 1 disappear.
class QuotientMap {
 public:
  /// Throws Error if N is not normal.
  QuotientMap(PresentationPtr source, FullFormSequence N);

  PresentationPtr const& source() const noexcept { return source_; }
  PresentationPtr const& target() const noexcept { return target_; }
  FullFormSequence const& kernel() const noexcept { return kernel_; }
  std::vector<std::size_t> const& columns() const noexcept { return columns_; }

  MalcevVector project(MalcevVector const& g) const;
  /// A preimage of a target element: prod a_{columns[k]}^{q_k}.
  MalcevVector lift(MalcevVector const& q) const;

  /// Translation maps with the source generators as X.
  PresentationConversion conversion() const;

 private:
  // g with every pivot coordinate of N reduced into [0, pivot) by
  // right multiplication with rows of N.
  MalcevVector reduce(MalcevVector g) const;

  PresentationPtr source_;
  FullFormSequence kernel_;
  std::vector<std::size_t> columns_;
  PresentationPtr target_;
};

PresentationConversion quotient_presentation(NilpotentPresentation const& P,
                                             FullFormSequence const& N);

/// G / Gamma_j, i.e. the class j-1 quotient.
QuotientMap truncation(PresentationPtr const& P, int j);

}  // namespace nilkit
