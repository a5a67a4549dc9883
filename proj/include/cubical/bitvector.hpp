#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cubical {

/// Fixed-capacity bit vector over hyperplane indices.
///
/// The same type serves two roles: as an orientation (bit i set means the
/// positive side of hyperplane i is chosen) and as a set of hyperplanes.
/// Ordering agrees with lexicographic order of the bit-string rendering,
/// where character i is bit i.
template <std::size_t Words>
class BitVector {
  static_assert(Words > 0, "BitVector needs at least one word");

 public:
  static constexpr std::size_t kCapacity = 64 * Words;

  constexpr BitVector() = default;

  static constexpr BitVector single(std::size_t i) {
    BitVector b;
    b.set(i);
    return b;
  }

  /// Bits [0, n) set.
  static constexpr BitVector lowMask(std::size_t n) {
    BitVector b;
    for (std::size_t w = 0; w < Words; ++w) {
      const std::size_t lo = 64 * w;
      if (n >= lo + 64) {
        b.words_[w] = ~std::uint64_t{0};
      } else if (n > lo) {
        b.words_[w] = (std::uint64_t{1} << (n - lo)) - 1;
      }
    }
    return b;
  }

  constexpr bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  constexpr void set(std::size_t i, bool value = true) {
    const std::uint64_t m = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= m;
    } else {
      words_[i / 64] &= ~m;
    }
  }
  constexpr void reset(std::size_t i) { set(i, false); }
  constexpr void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  constexpr BitVector flipped(std::size_t i) const {
    BitVector b = *this;
    b.flip(i);
    return b;
  }

  constexpr std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  constexpr bool none() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  constexpr bool any() const { return !none(); }

  constexpr bool isSubsetOf(const BitVector& other) const { return (*this & ~other).none(); }

  /// Lowest set bit, if any.
  constexpr std::optional<std::size_t> first() const {
    for (std::size_t w = 0; w < Words; ++w) {
      if (words_[w] != 0) return 64 * w + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return std::nullopt;
  }

  /// Calls f(i) for each set bit in ascending order.
  template <class F>
  constexpr void forEach(F&& f) const {
    for (std::size_t w = 0; w < Words; ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(word));
        f(64 * w + bit);
        word &= word - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    forEach([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  static BitVector fromIndices(const std::vector<std::size_t>& idx) {
    BitVector b;
    for (auto i : idx) b.set(i);
    return b;
  }

  constexpr BitVector& operator&=(const BitVector& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  constexpr BitVector& operator|=(const BitVector& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  constexpr BitVector& operator^=(const BitVector& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  friend constexpr BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend constexpr BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  friend constexpr BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend constexpr BitVector operator~(BitVector a) {
    for (auto& w : a.words_) w = ~w;
    return a;
  }

  friend constexpr bool operator==(const BitVector&, const BitVector&) = default;

  /// Lexicographic order of the bit-string rendering ('0' < '1', index 0 first).
  friend constexpr std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
    for (std::size_t w = 0; w < Words; ++w) {
      const std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (diff != 0) {
        const auto bit = std::countr_zero(diff);
        return ((a.words_[w] >> bit) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
      }
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  std::string toString(std::size_t n) const {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  /// Parses a '0'/'1' string; returns nullopt on a bad character or overflow.
  static std::optional<BitVector> fromString(std::string_view s) {
    if (s.size() > kCapacity) return std::nullopt;
    BitVector b;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        b.set(i);
      } else if (s[i] != '0') {
        return std::nullopt;
      }
    }
    return b;
  }

 private:
  std::array<std::uint64_t, Words> words_{};
};

template <std::size_t W>
constexpr BitVector<W> majority(const BitVector<W>& a, const BitVector<W>& b, const BitVector<W>& c) {
  return (a & b) | (b & c) | (c & a);
}

/// Orientation of every hyperplane; a vertex when it belongs to a complex.
template <std::size_t W>
using BasicOrientation = BitVector<W>;

/// A subset of the hyperplane index range.
template <std::size_t W>
using BasicHyperplaneSet = BitVector<W>;

inline constexpr std::size_t kNarrowWords = 1;
inline constexpr std::size_t kWideWords = 4;

using Orientation = BasicOrientation<kNarrowWords>;
using HyperplaneSet = BasicHyperplaneSet<kNarrowWords>;

}  // namespace cubical

template <std::size_t W>
struct std::hash<cubical::BitVector<W>> {
  std::size_t operator()(const cubical::BitVector<W>& b) const noexcept { return b.hash(); }
};
