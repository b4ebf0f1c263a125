#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "nilkit/integer.hpp"
#include "nilkit/malcev_vector.hpp"
#include "nilkit/words.hpp"

namespace nilkit {

struct GeneratorSpec {
  Order order;    // nullopt: infinite
  int level = 1;  // central series level, 1..c
};

/// Raw tables of a nilpotent presentation on a_1..a_m (0-based here).
///
///   a_j a_i       = a_i a_j    * conjugates[{j,i}]     (i < j)
///   a_j^-1 a_i    = a_i a_j^-1 * inverse_conjugates[{j,i}]
///   a_i^{e_i}     = powers[i]                           (e_i finite)
///
/// Tails are coordinate vectors supported strictly right of j (resp. i).
/// Missing conjugate entries mean the generators commute; inverse tails are
/// derived when absent and verified when present.
struct PresentationData {
  int nilpotency_class = 1;
  std::vector<GeneratorSpec> generators;
  std::map<std::pair<std::size_t, std::size_t>, MalcevVector> conjugates;
  std::map<std::pair<std::size_t, std::size_t>, MalcevVector> inverse_conjugates;
  std::map<std::size_t, MalcevVector> powers;
};

/// A nilpotent presentation with exact Mal'cev-coordinate arithmetic.
///
/// Arithmetic works on canonical coordinate vectors (0 <= alpha_i < e_i for
/// torsion generators). Multiplying by a_i^k moves a_i^k left past the tail
/// w in G_{i+1} = <a_{i+1},...,a_m> using w a_i^k = a_i^k (w)^{a_i^k}, where
/// conjugation by a_i^k is an automorphism of G_{i+1} raised to the k-th
/// power by repeated squaring. Costs are polynomial in the bit size of the
/// exponents, never in the expanded word length.
///
/// Immutable after construction; safe to share between threads.
class NilpotentPresentation {
 public:
  explicit NilpotentPresentation(PresentationData data);

  /// Text format:
  ///   nilpotent m=<int> c=<int>
  ///   a<i> order=<int|inf> level=<int>     (one per generator, in order)
  ///   a<j> a<i> = a<i> a<j> <tail>
  ///   a<j>^-1 a<i> = a<i> a<j>^-1 <tail>   (optional, verified)
  ///   a<i>^<e> = <tail>
  static NilpotentPresentation parse(std::string const& text);
  std::string to_text() const;

  std::size_t size() const noexcept { return gens_.size(); }
  int nilpotency_class() const noexcept { return data_.nilpotency_class; }
  Order const& order(std::size_t i) const { return gens_[i].order; }
  bool is_torsion(std::size_t i) const { return gens_[i].order.has_value(); }
  int level(std::size_t i) const { return gens_[i].level; }
  Alphabet alphabet() const { return Alphabet(size()); }
  PresentationData const& data() const noexcept { return data_; }

  /// Index of the first generator with level >= j (size() if none), so that
  /// the series term of level j is G_{series_start(j)}.
  std::size_t series_start(int j) const;

  MalcevVector const& conjugate_tail(std::size_t j, std::size_t i) const;
  MalcevVector const& inverse_conjugate_tail(std::size_t j, std::size_t i) const;
  MalcevVector const& power_tail(std::size_t i) const;

  MalcevVector identity() const { return MalcevVector(size()); }
  /// Canonical coordinates of a_i.
  MalcevVector const& generator(std::size_t i) const { return gen_vec_[i]; }

  MalcevVector collect(Word const& w) const;
  MalcevVector multiply(MalcevVector const& u, MalcevVector const& v) const;
  MalcevVector inverse(MalcevVector const& u) const;
  MalcevVector power(MalcevVector const& u, Integer const& n) const;
  /// x^-1 u x
  MalcevVector conjugate(MalcevVector const& u, MalcevVector const& x) const;
  /// u^-1 v^-1 u v
  MalcevVector commutator(MalcevVector const& u, MalcevVector const& v) const;
  /// Canonical form of a_1^{c_1} ... a_m^{c_m} for arbitrary integers c_i.
  MalcevVector canonicalize(MalcevVector const& raw) const;
  bool is_canonical(MalcevVector const& v) const;

  MalcevVector evaluate(ExpWord const& w) const;
  MalcevVector evaluate(StraightLineProgram const& p) const;
  MalcevVector evaluate(CompressedWord const& w) const;

  /// True iff the order of each a_i modulo G_{i+1} is exactly e_i, i.e. the
  /// presented group really has the declared Mal'cev normal form.
  bool check_consistency() const;

  friend bool operator==(NilpotentPresentation const& a,
                         NilpotentPresentation const& b);

 private:
  // Images of a_{i+1},...,a_m (indexed by absolute generator index; entries
  // <= i are unused) under an endomorphism of G_{i+1}.
  struct Endomorphism {
    std::size_t base = 0;  // acts on G_{base}
    std::vector<MalcevVector> images;
    bool identity = false;
    std::size_t fixed_from = 0;  // a_l is fixed for every l >= fixed_from
  };
  // Lazily built f^(2^t) for the forward and backward automorphisms. Shared
  // by copies, which have identical tables.
  struct PowerCache {
    std::mutex mu;
    std::vector<std::vector<std::shared_ptr<const Endomorphism>>> squares[2];
  };

  void validate();
  void precompute();
  void mul_gen_power(MalcevVector& u, std::size_t i, Integer const& k) const;
  void mul_into(MalcevVector& u, MalcevVector const& v) const;
  MalcevVector apply(Endomorphism const& f, MalcevVector const& w) const;
  Endomorphism compose(Endomorphism const& f, Endomorphism const& g) const;
  MalcevVector conjugate_by_power(std::size_t i, Integer const& k,
                                  MalcevVector const& w) const;
  std::shared_ptr<const Endomorphism> square_power(std::size_t i, bool forward,
                                                   std::size_t t) const;
  bool in_tail(MalcevVector const& v, std::size_t start) const;

  PresentationData data_;
  std::vector<GeneratorSpec> gens_;
  std::vector<MalcevVector> gen_vec_;
  std::vector<Endomorphism> forward_;   // conjugation by a_i
  std::vector<Endomorphism> backward_;  // conjugation by a_i^-1
  std::map<std::pair<std::size_t, std::size_t>, MalcevVector> derived_inverse_;
  MalcevVector zero_;
  bool precompute_ok_ = true;
  std::shared_ptr<PowerCache> cache_;
};

using PresentationPtr = std::shared_ptr<const NilpotentPresentation>;

inline PresentationPtr make_presentation(PresentationData data) {
  return std::make_shared<const NilpotentPresentation>(std::move(data));
}

/// Abelian presentation Z^n (all generators infinite, level 1).
PresentationPtr free_abelian(std::size_t n);

/// G1 x G2 with the basis of G1 first. Levels of G2 are shifted by the class
/// of G1, so the declared series is central of length c1 + c2 (an upper
/// bound for the class, not the class itself).
PresentationPtr direct_product(NilpotentPresentation const& a,
                               NilpotentPresentation const& b);

}  // namespace nilkit
