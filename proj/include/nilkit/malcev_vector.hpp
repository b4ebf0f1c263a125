#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "nilkit/integer.hpp"

namespace nilkit {

/// Mal'cev coordinates (alpha_1, ..., alpha_m) of a group element.
struct MalcevVector {
  std::vector<Integer> coords;

  MalcevVector() = default;
  explicit MalcevVector(std::size_t m) : coords(m) {}
  explicit MalcevVector(std::vector<Integer> c) : coords(std::move(c)) {}
  MalcevVector(std::initializer_list<long> c) {
    coords.reserve(c.size());
    for (long x : c) coords.emplace_back(x);
  }

  std::size_t size() const noexcept { return coords.size(); }
  Integer& operator[](std::size_t i) { return coords[i]; }
  Integer const& operator[](std::size_t i) const { return coords[i]; }

  bool is_identity() const {
    for (auto const& x : coords) {
      if (x != 0) return false;
    }
    return true;
  }

  /// Index of the first nonzero coordinate, or size() for the identity.
  std::size_t leading_index() const {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] != 0) return i;
    }
    return coords.size();
  }

  friend bool operator==(MalcevVector const& a, MalcevVector const& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(MalcevVector const& a, MalcevVector const& b) {
    return a.coords < b.coords;
  }
};

/// "(1,1,-1)"
std::string format(MalcevVector const& v);

/// Parses "(1,2,-3)"; whitespace is ignored.
MalcevVector parse_coordinates(std::string const& text);

}  // namespace nilkit
