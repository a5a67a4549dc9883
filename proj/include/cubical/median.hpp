#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/complex.hpp"
#include "cubical/error.hpp"
#include "cubical/halfspace.hpp"
#include "cubical/weights.hpp"

namespace cubical {

/// Hyperplanes separating u from v.
template <std::size_t W>
BitVector<W> separating(const BitVector<W>& u, const BitVector<W>& v) {
  return u ^ v;
}

template <std::size_t W>
Length distance(const BasicCubeComplex<W>& x, const WeightFunction& mu, const BitVector<W>& u, const BitVector<W>& v) {
  x.requireVertex(u);
  x.requireVertex(v);
  if (mu.size() != x.hyperplaneCount()) throw Error(ErrorCode::LengthMismatch, "weight count differs from hyperplane count");
  return mu.measure(u ^ v);
}

template <std::size_t W>
Length distance(const BasicCubeComplex<W>& x, const BitVector<W>& u, const BitVector<W>& v) {
  return distance(x, x.weights(), u, v);
}

template <std::size_t W>
BitVector<W> median(const BasicCubeComplex<W>& x, const BitVector<W>& u, const BitVector<W>& v, const BitVector<W>& w) {
  x.requireVertex(u);
  x.requireVertex(v);
  x.requireVertex(w);
  auto m = majority(u, v, w);
  ensure(x.contains(m), "median of three vertices is not a vertex");
  return m;
}

/// Whether z lies coordinatewise between u and v.
template <std::size_t W>
bool between(const BitVector<W>& u, const BitVector<W>& v, const BitVector<W>& z) {
  return ((z ^ u) & (z ^ v)).none();
}

template <std::size_t W>
std::vector<BitVector<W>> interval(const BasicCubeComplex<W>& x, const BitVector<W>& u, const BitVector<W>& v) {
  x.requireVertex(u);
  x.requireVertex(v);
  std::vector<BitVector<W>> out;
  for (const auto& z : x.vertices()) {
    if (between(u, v, z)) out.push_back(z);
  }
  return out;
}

/// A convex vertex set, stored as the hyperplanes constant on it and their
/// values. The containing halfspaces are exactly these fixed sides.
template <std::size_t W>
class ConvexSet {
 public:
  ConvexSet() = default;

  /// Intersection of the given halfspaces with the vertex set of x.
  static ConvexSet fromHalfspaces(const BasicCubeComplex<W>& x, const std::vector<Halfspace>& hs) {
    BitVector<W> mask;
    BitVector<W> values;
    bool contradictory = false;
    for (const auto& h : hs) {
      x.requireHyperplane(h.hyperplane);
      const bool pos = h.sign == Sign::Positive;
      if (mask.test(h.hyperplane) && values.test(h.hyperplane) != pos) contradictory = true;
      mask.set(h.hyperplane);
      if (pos) values.set(h.hyperplane);
    }
    std::vector<BitVector<W>> vs;
    if (!contradictory) {
      for (const auto& v : x.vertices()) {
        if (((v ^ values) & mask).none()) vs.push_back(v);
      }
    }
    return fromVertexSubset(x, std::move(vs), mask, values);
  }

  /// Wraps a vertex subset already known to be convex.
  static ConvexSet fromConvexVertices(const BasicCubeComplex<W>& x, std::vector<BitVector<W>> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return fromVertexSubset(x, std::move(vs), {}, {});
  }

  bool empty() const { return vertices_.empty(); }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<BitVector<W>>& vertices() const { return vertices_; }
  const BitVector<W>& fixedHyperplanes() const { return fixed_; }
  const BitVector<W>& fixedValues() const { return values_; }

  bool contains(const BitVector<W>& v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  /// Every halfspace containing the set, in halfspace order. Empty for the empty set.
  std::vector<Halfspace> definingHalfspaces() const {
    std::vector<Halfspace> out;
    fixed_.forEach([&](std::size_t i) { out.push_back({i, values_.test(i) ? Sign::Positive : Sign::Negative}); });
    return out;
  }

  /// Hyperplanes crossing the set.
  BitVector<W> crossing(std::size_t n) const { return BitVector<W>::lowMask(n) & ~fixed_; }

  friend bool operator==(const ConvexSet&, const ConvexSet&) = default;

 private:
  static ConvexSet fromVertexSubset(const BasicCubeComplex<W>& x, std::vector<BitVector<W>> vs, const BitVector<W>& mask,
                                    const BitVector<W>& values) {
    ConvexSet c;
    c.vertices_ = std::move(vs);
    if (c.vertices_.empty()) {
      c.fixed_ = mask;
      c.values_ = values;
      return c;
    }
    const auto full = x.allHyperplanes();
    BitVector<W> ones;
    BitVector<W> zeros;
    for (const auto& v : c.vertices_) {
      ones |= v;
      zeros |= ~v & full;
    }
    c.fixed_ = full & ~(ones & zeros);
    c.values_ = ones & c.fixed_;
    return c;
  }

  std::vector<BitVector<W>> vertices_;
  BitVector<W> fixed_;
  BitVector<W> values_;
};

/// Smallest convex set containing A: the intersection of all halfspaces containing A.
template <std::size_t W>
ConvexSet<W> hull(const BasicCubeComplex<W>& x, const std::vector<BitVector<W>>& a) {
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "hull of an empty set");
  const auto full = x.allHyperplanes();
  BitVector<W> ones;
  BitVector<W> zeros;
  for (const auto& v : a) {
    x.requireVertex(v);
    ones |= v;
    zeros |= ~v & full;
  }
  const auto fixed = full & ~(ones & zeros);
  std::vector<Halfspace> hs;
  fixed.forEach([&](std::size_t i) { hs.push_back({i, ones.test(i) ? Sign::Positive : Sign::Negative}); });
  return ConvexSet<W>::fromHalfspaces(x, hs);
}

/// Gate projection: x with the set's fixed coordinates overwritten.
template <std::size_t W>
BitVector<W> gate(const BasicCubeComplex<W>& x, const ConvexSet<W>& c, const BitVector<W>& v) {
  x.requireVertex(v);
  if (c.empty()) throw Error(ErrorCode::EmptyConvexSet, "gate onto an empty convex set");
  const auto g = (v & ~c.fixedHyperplanes()) | (c.fixedValues() & c.fixedHyperplanes());
  ensure(c.contains(g), "gate projection left the convex set");
  return g;
}

/// Hyperplanes separating v from every point of c.
template <std::size_t W>
BitVector<W> separatingFromSet(const ConvexSet<W>& c, const BitVector<W>& v) {
  return (v ^ c.fixedValues()) & c.fixedHyperplanes();
}

template <std::size_t W>
struct HellyResult {
  std::vector<BitVector<W>> vertices;
  bool pairwiseIntersecting = true;
};

template <std::size_t W>
HellyResult<W> hellyIntersection(const BasicCubeComplex<W>& x, const std::vector<ConvexSet<W>>& sets) {
  (void)x;
  if (sets.empty()) throw Error(ErrorCode::EmptyInput, "Helly intersection of an empty family");
  HellyResult<W> out;
  for (std::size_t i = 0; i < sets.size() && out.pairwiseIntersecting; ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<BitVector<W>> both;
      std::set_intersection(sets[i].vertices().begin(), sets[i].vertices().end(), sets[j].vertices().begin(),
                            sets[j].vertices().end(), std::back_inserter(both));
      if (both.empty()) {
        out.pairwiseIntersecting = false;
        break;
      }
    }
  }
  out.vertices = sets.front().vertices();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::vector<BitVector<W>> next;
    std::set_intersection(out.vertices.begin(), out.vertices.end(), sets[i].vertices().begin(), sets[i].vertices().end(),
                          std::back_inserter(next));
    out.vertices = std::move(next);
  }
  return out;
}

template <std::size_t W>
struct BridgeRecord {
  std::vector<std::pair<BitVector<W>, BitVector<W>>> minPairs;
  std::vector<BitVector<W>> bridge;
  std::vector<BitVector<W>> shoreH;
  std::vector<BitVector<W>> shoreK;
  /// Hyperplanes separating the two halfspaces, their own included.
  BitVector<W> separators;
  /// Hyperplanes transverse to both bounding hyperplanes.
  BitVector<W> transverseToBoth;
  Length gap = 0;
};

namespace detail {

template <std::size_t W>
void requireDisjointPair(const BasicCubeComplex<W>& x, const SideTable<W>& table, Halfspace h, Halfspace k) {
  x.requireHyperplane(h.hyperplane);
  x.requireHyperplane(k.hyperplane);
  if (h == complement(k)) {
    throw Error(ErrorCode::ComplementaryPair, toString(h) + " and " + toString(k) + " are complementary",
                {toString(h), toString(k)});
  }
  if (h == k || table.meets(h, k)) {
    throw Error(ErrorCode::NotDisjoint, toString(h) + " and " + toString(k) + " intersect", {toString(h), toString(k)});
  }
}

}  // namespace detail

template <std::size_t W>
BridgeRecord<W> bridge(const BasicCubeComplex<W>& x, const WeightFunction& mu, Halfspace h, Halfspace k) {
  const SideTable<W> table(x);
  detail::requireDisjointPair(x, table, h, k);
  BridgeRecord<W> r;
  for (std::size_t j = 0; j < x.hyperplaneCount(); ++j) {
    const bool hPos = table.subset(h, positive(j));
    const bool hNeg = table.subset(h, negative(j));
    const bool kPos = table.subset(k, positive(j));
    const bool kNeg = table.subset(k, negative(j));
    if ((hPos && kNeg) || (hNeg && kPos)) r.separators.set(j);
  }
  r.transverseToBoth = table.transverseTo(h.hyperplane) & table.transverseTo(k.hyperplane);
  r.gap = mu.measure(r.separators);
  // Every pair is separated by all of `separators`, so minimal pairs differ in exactly those.
  for (const auto& v : x.vertices()) {
    if (!h.contains(v)) continue;
    const auto y = v ^ r.separators;
    if (k.contains(y) && x.contains(y)) {
      r.minPairs.emplace_back(v, y);
      r.shoreH.push_back(v);
      r.shoreK.push_back(y);
    }
  }
  std::sort(r.shoreK.begin(), r.shoreK.end());
  for (const auto& z : x.vertices()) {
    for (const auto& [a, b] : r.minPairs) {
      if (between(a, b, z)) {
        r.bridge.push_back(z);
        break;
      }
    }
  }
  ensure(!r.minPairs.empty(), "disjoint halfspaces without a minimal pair");
  return r;
}

template <std::size_t W>
BridgeRecord<W> bridge(const BasicCubeComplex<W>& x, Halfspace h, Halfspace k) {
  return bridge(x, x.weights(), h, k);
}

/// No hyperplane is transverse to both bounding hyperplanes. No precondition on the pair.
template <std::size_t W>
bool noCommonTransverse(const SideTable<W>& table, Halfspace h, Halfspace k) {
  return (table.transverseTo(h.hyperplane) & table.transverseTo(k.hyperplane)).none();
}

template <std::size_t W>
bool stronglySeparated(const BasicCubeComplex<W>& x, Halfspace h, Halfspace k) {
  const SideTable<W> table(x);
  detail::requireDisjointPair(x, table, h, k);
  return noCommonTransverse(table, h, k);
}

}  // namespace cubical
