#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nilkit/integer.hpp"
#include "nilkit/malcev_vector.hpp"

namespace nilkit {

/// Generator naming used when parsing and printing words. Generators are
/// 0-based internally; `a<i>` always refers to generator i-1 when no custom
/// name shadows it.
class Alphabet {
 public:
  explicit Alphabet(std::size_t size) : size_(size) {}
  explicit Alphabet(std::vector<std::string> names)
      : size_(names.size()), names_(std::move(names)) {}

  std::size_t size() const noexcept { return size_; }
  std::string name(std::size_t gen) const;
  /// Resolves an identifier to a generator index, or returns size() if the
  /// identifier is not a generator name.
  std::size_t lookup(std::string_view ident) const;

 private:
  std::size_t size_;
  std::vector<std::string> names_;
};

struct Letter {
  std::size_t gen;
  Integer exponent;

  friend bool operator==(Letter const&, Letter const&) = default;
};

/// A flat group word; normalized words have no zero exponents and no two
/// adjacent letters on the same generator.
struct Word {
  std::vector<Letter> letters;

  bool empty() const noexcept { return letters.empty(); }
  /// Number of letters of the fully expanded word (sum of |exponent|).
  Integer length() const;
  Word inverse() const;
  void append(std::size_t gen, Integer const& exponent);
  void append(Word const& w);

  friend bool operator==(Word const&, Word const&) = default;
};

Word normalize(Word w);

/// Word with nested binary exponents, e.g. (a1^4 a2^2)^8 a1^-6.
struct ExpWord;

struct ExpTerm {
  std::size_t gen = 0;                  // used when sub is null
  std::shared_ptr<const ExpWord> sub;   // nested factor
  Integer exponent = 1;
};

struct ExpWord {
  std::vector<ExpTerm> terms;

  static ExpWord from_word(Word const& w);
  static ExpWord letter(std::size_t gen, Integer const& exponent = 1);
  ExpWord power(Integer const& n) const;
  ExpWord inverse() const { return power(-1); }
  ExpWord& append(ExpWord const& w);
  bool empty() const noexcept { return terms.empty(); }

  /// Length of the expansion, computed without expanding.
  Integer expanded_length() const;
  /// Expands the word; throws Error when the expansion exceeds `limit` letters.
  Word expand(Integer const& limit) const;
};

/// [u,v] = u^-1 v^-1 u v
ExpWord commutator(ExpWord const& u, ExpWord const& v);

std::string to_string(Word const& w, Alphabet const& alphabet);
std::string to_string(ExpWord const& w, Alphabet const& alphabet);

/// Thrown by expand() when a word is too long to materialize.
class ExpansionLimitError : public Error {
 public:
  using Error::Error;
};

/// Parses the word grammar
///   word := term* ; term := atom ('^' int)? ;
///   atom := gen | '1' | '(' word ')' | '[' word ',' word ']'
/// keeping nested exponents (binary-exponent form).
ExpWord parse_exp_word(std::string_view text, Alphabet const& alphabet);

/// Parses and expands to a normalized flat word.
Word parse_word(std::string_view text, Alphabet const& alphabet,
                Integer const& limit = Integer(1) << 24);

/// Straight-line program: rule i is a pair of earlier rules, a terminal
/// generator^(+-1), or the empty word. The last rule is the root.
class StraightLineProgram {
 public:
  struct Rule {
    enum class Kind { Pair, Terminal, Empty };
    Kind kind = Kind::Empty;
    std::size_t left = 0, right = 0;  // Pair
    std::size_t gen = 0;              // Terminal
    int sign = 1;                     // Terminal
  };

  /// Validates acyclicity and reachability from the root.
  explicit StraightLineProgram(std::vector<Rule> rules);

  static StraightLineProgram parse(std::string_view text,
                                   Alphabet const& alphabet);
  /// Builds a program whose expansion is `w` (exponents by repeated doubling).
  static StraightLineProgram from_word(Word const& w);
  /// Program of `levels` rules: a terminal followed by levels-1 doublings.
  static StraightLineProgram doubling(std::size_t gen, std::size_t levels);

  std::size_t size() const noexcept { return rules_.size(); }
  std::vector<Rule> const& rules() const noexcept { return rules_; }
  /// Expansion lengths of every nonterminal, bottom-up.
  std::vector<Integer> lengths() const;
  Word expand(Integer const& limit) const;
  std::string to_string(Alphabet const& alphabet) const;

 private:
  std::vector<Rule> rules_;
};

/// A group element in one of the four input encodings.
using CompressedWord =
    std::variant<Word, ExpWord, MalcevVector, StraightLineProgram>;

}  // namespace nilkit
