#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "cubical/bitvector.hpp"

namespace cubical {

enum class Sign : unsigned char { Negative = 0, Positive = 1 };

inline constexpr Sign opposite(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

/// One side of a hyperplane. The positive side holds the vertices whose bit
/// for `hyperplane` is set.
struct Halfspace {
  std::size_t hyperplane = 0;
  Sign sign = Sign::Positive;

  friend constexpr bool operator==(const Halfspace&, const Halfspace&) = default;
  friend constexpr auto operator<=>(const Halfspace& a, const Halfspace& b) {
    if (auto c = a.hyperplane <=> b.hyperplane; c != 0) return c;
    // '+' sorts before '-' so that listings read h0+, h0-, h1+, ...
    return static_cast<int>(b.sign) <=> static_cast<int>(a.sign);
  }

  template <std::size_t W>
  constexpr bool contains(const BitVector<W>& v) const {
    return v.test(hyperplane) == (sign == Sign::Positive);
  }

  /// Dense index in [0, 2n): 2*hyperplane for '+', 2*hyperplane+1 for '-'.
  constexpr std::size_t dense() const { return 2 * hyperplane + (sign == Sign::Positive ? 0 : 1); }
  static constexpr Halfspace fromDense(std::size_t d) {
    return {d / 2, (d % 2 == 0) ? Sign::Positive : Sign::Negative};
  }
};

inline constexpr Halfspace positive(std::size_t i) { return {i, Sign::Positive}; }
inline constexpr Halfspace negative(std::size_t i) { return {i, Sign::Negative}; }

inline constexpr Halfspace complement(Halfspace h) { return {h.hyperplane, opposite(h.sign)}; }

/// Halfspace of `hyperplane` containing the given orientation.
template <std::size_t W>
constexpr Halfspace sideOf(const BitVector<W>& v, std::size_t hyperplane) {
  return {hyperplane, v.test(hyperplane) ? Sign::Positive : Sign::Negative};
}

inline std::string toString(Halfspace h) {
  return std::to_string(h.hyperplane) + (h.sign == Sign::Positive ? "+" : "-");
}

/// Parses "3+" / "3-".
inline std::optional<Halfspace> parseHalfspace(std::string_view s) {
  if (s.size() < 2) return std::nullopt;
  const char tail = s.back();
  if (tail != '+' && tail != '-') return std::nullopt;
  std::size_t value = 0;
  for (char c : s.substr(0, s.size() - 1)) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > (1U << 20)) return std::nullopt;
  }
  return Halfspace{value, tail == '+' ? Sign::Positive : Sign::Negative};
}

}  // namespace cubical
