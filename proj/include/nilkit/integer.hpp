#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilkit {

using Integer = mpz_class;

/// Generator order: a finite positive integer, or infinite (nullopt).
using Order = std::optional<Integer>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(std::string const& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

inline int sign(Integer const& x) { return sgn(x); }

// Floor division: a = q*b + r with 0 <= r < |b| for b > 0.
inline void floor_divmod(Integer const& a, Integer const& b, Integer& q,
                         Integer& r) {
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline Integer floor_mod(Integer const& a, Integer const& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer floor_div(Integer const& a, Integer const& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct Bezout {
  Integer g, x, y;  // g = x*a + y*b, g >= 0
};

inline Bezout gcdext(Integer const& a, Integer const& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

inline bool divides(Integer const& d, Integer const& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::string to_string(Integer const& x) { return x.get_str(); }

inline std::string to_string(Order const& e) {
  return e ? e->get_str() : std::string("inf");
}

/// Parses an optionally signed decimal integer; throws ParseError.
inline Integer parse_integer(std::string_view text, std::size_t offset = 0) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw ParseError("expected integer", offset + i);
  for (std::size_t k = i; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') {
      throw ParseError("invalid digit in integer", offset + k);
    }
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  return Integer(s, 10);
}

}  // namespace nilkit
