#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cubical/complex.hpp"
#include "cubical/error.hpp"
#include "cubical/halfspace.hpp"

namespace cubical {

/// Which of the four quadrants h∩k, h*∩k, h∩k*, h*∩k* meet the vertex set.
struct PairRelation {
  enum class Kind {
    Transverse,
    FirstInSecond,       // h ⊆ k
    SecondInFirst,       // k ⊆ h
    Disjoint,            // h ⊆ k*
    ComplementsDisjoint  // k* ⊆ h, i.e. h ∪ k is everything
  };

  Halfspace h;
  Halfspace k;
  bool hk = false;
  bool hStarK = false;
  bool hKStar = false;
  bool hStarKStar = false;

  bool transverse() const { return hk && hStarK && hKStar && hStarKStar; }

  Kind kind() const {
    if (transverse()) return Kind::Transverse;
    if (!hKStar) return Kind::FirstInSecond;
    if (!hStarK) return Kind::SecondInFirst;
    if (!hk) return Kind::Disjoint;
    return Kind::ComplementsDisjoint;
  }

  /// Number of empty quadrants; exactly one for non-transverse pairs of a valid complex.
  int emptyQuadrants() const { return !hk + !hStarK + !hKStar + !hStarKStar; }
};

inline std::string_view pairKindName(PairRelation::Kind k) {
  switch (k) {
    case PairRelation::Kind::Transverse: return "transverse";
    case PairRelation::Kind::FirstInSecond: return "first_in_second";
    case PairRelation::Kind::SecondInFirst: return "second_in_first";
    case PairRelation::Kind::Disjoint: return "disjoint";
    case PairRelation::Kind::ComplementsDisjoint: return "complements_disjoint";
  }
  return "unknown";
}

template <std::size_t W>
PairRelation pairRelation(const BasicCubeComplex<W>& x, Halfspace h, Halfspace k) {
  x.requireHyperplane(h.hyperplane);
  x.requireHyperplane(k.hyperplane);
  if (h.hyperplane == k.hyperplane) {
    throw Error(ErrorCode::SameHyperplane, "halfspaces " + toString(h) + " and " + toString(k) + " share a hyperplane",
                {toString(h), toString(k)});
  }
  PairRelation r{h, k};
  for (const auto& v : x.vertices()) {
    const bool inH = h.contains(v);
    const bool inK = k.contains(v);
    r.hk |= inH && inK;
    r.hStarK |= !inH && inK;
    r.hKStar |= inH && !inK;
    r.hStarKStar |= !inH && !inK;
  }
  return r;
}

/// True iff the orientation chooses pairwise-intersecting halfspaces.
template <std::size_t W>
bool isUltrafilter(const BasicCubeComplex<W>& x, const BitVector<W>& o, std::size_t length) {
  if (length != x.hyperplaneCount()) {
    throw Error(ErrorCode::LengthMismatch, "orientation length " + std::to_string(length) + " differs from " +
                                               std::to_string(x.hyperplaneCount()));
  }
  return SideTable<W>(x).consistent(o);
}

/// Parses the orientation from text and checks it.
template <std::size_t W>
bool isUltrafilter(const BasicCubeComplex<W>& x, std::string_view bits) {
  auto o = BitVector<W>::fromString(bits);
  if (!o) throw Error(ErrorCode::ParseError, "bad orientation '" + std::string(bits) + "'");
  return isUltrafilter(x, *o, bits.size());
}

struct FacingTriple {
  std::array<std::size_t, 3> hyperplanes;
  std::array<Halfspace, 3> sides;  // pairwise disjoint witness choice
};

/// All unordered facing triples, each with the first disjoint side choice found.
template <std::size_t W>
std::vector<FacingTriple> facingTriples(const BasicCubeComplex<W>& x) {
  const SideTable<W> table(x);
  const std::size_t n = x.hyperplaneCount();
  std::vector<FacingTriple> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (table.transverse(a, b)) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (table.transverse(a, c) || table.transverse(b, c)) continue;
        bool found = false;
        for (unsigned mask = 0; mask < 8 && !found; ++mask) {
          const Halfspace ha{a, (mask & 1U) ? Sign::Negative : Sign::Positive};
          const Halfspace hb{b, (mask & 2U) ? Sign::Negative : Sign::Positive};
          const Halfspace hc{c, (mask & 4U) ? Sign::Negative : Sign::Positive};
          if (table.disjoint(ha, hb) && table.disjoint(ha, hc) && table.disjoint(hb, hc)) {
            out.push_back({{a, b, c}, {ha, hb, hc}});
            found = true;
          }
        }
      }
    }
  }
  return out;
}

/// Facing-triple membership as a lookup over hyperplane triples.
template <std::size_t W>
class FacingTable {
 public:
  explicit FacingTable(const BasicCubeComplex<W>& x) : n_(x.hyperplaneCount()), partners_(n_ * n_) {
    for (const auto& t : facingTriples(x)) {
      const auto [a, b, c] = t.hyperplanes;
      partners_[a * n_ + b].set(c);
      partners_[b * n_ + a].set(c);
      partners_[a * n_ + c].set(b);
      partners_[c * n_ + a].set(b);
      partners_[b * n_ + c].set(a);
      partners_[c * n_ + b].set(a);
    }
  }

  /// Hyperplanes completing {a, b} to a facing triple.
  const BitVector<W>& completions(std::size_t a, std::size_t b) const { return partners_[a * n_ + b]; }

  bool facingFree(const BitVector<W>& set) const {
    bool ok = true;
    set.forEach([&](std::size_t a) {
      set.forEach([&](std::size_t b) {
        if (ok && a < b && (completions(a, b) & set).any()) ok = false;
      });
    });
    return ok;
  }

 private:
  std::size_t n_;
  std::vector<BitVector<W>> partners_;
};

}  // namespace cubical
