#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/bitvector.hpp"
#include "cubical/error.hpp"
#include "cubical/halfspace.hpp"
#include "cubical/weights.hpp"

namespace cubical {

/// One failed validation check, with witnesses rendered as bit-strings.
struct Violation {
  enum class Kind { Empty, LengthMismatch, MedianClosure, Disconnected, RedundantCoordinate };
  Kind kind;
  std::string message;
  std::vector<std::string> witness;
};

inline std::string_view violationKindName(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Empty: return "empty";
    case Violation::Kind::LengthMismatch: return "length_mismatch";
    case Violation::Kind::MedianClosure: return "median_closure";
    case Violation::Kind::Disconnected: return "disconnected";
    case Violation::Kind::RedundantCoordinate: return "redundant_coordinate";
  }
  return "unknown";
}

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(Violation::Kind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
  }
};

template <std::size_t W>
class BasicCubeComplex;

template <std::size_t W>
ValidationReport validateComplex(std::size_t n, std::vector<BitVector<W>> vertices);

/// A finite CAT(0) cube complex stored as its vertex set of orientations.
///
/// The vertex set is kept sorted and is the only stored structure; pocset
/// relations, cubes and metrics are all derived from it on demand.
template <std::size_t W>
class BasicCubeComplex {
 public:
  using Vertex = BitVector<W>;
  using HyperplaneSet = BitVector<W>;
  static constexpr std::size_t kWords = W;

  /// The one-vertex complex with no hyperplanes.
  BasicCubeComplex() : n_(0), vertices_{Vertex{}}, weights_(WeightFunction::unit(0)) {}

  /// Validates and builds. Throws InvalidComplex with the report's first violation.
  static BasicCubeComplex fromVertices(std::size_t n, std::vector<Vertex> vertices,
                                       std::optional<WeightFunction> weights = std::nullopt) {
    checkCapacity(n);
    auto report = validateComplex<W>(n, vertices);
    if (!report.ok()) {
      const auto& v = report.violations.front();
      throw Error(ErrorCode::InvalidComplex, v.message, v.witness);
    }
    return fromTrustedVertices(n, std::move(vertices), std::move(weights));
  }

  /// Builds without validation; for constructions that are valid by design.
  static BasicCubeComplex fromTrustedVertices(std::size_t n, std::vector<Vertex> vertices,
                                              std::optional<WeightFunction> weights = std::nullopt) {
    checkCapacity(n);
    BasicCubeComplex x;
    x.n_ = n;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    x.vertices_ = std::move(vertices);
    x.weights_ = weights ? std::move(*weights) : WeightFunction::unit(n);
    if (x.weights_.size() != n) {
      throw Error(ErrorCode::LengthMismatch,
                  "weight count " + std::to_string(x.weights_.size()) + " differs from hyperplane count " + std::to_string(n));
    }
    return x;
  }

  static void checkCapacity(std::size_t n) {
    if (n > Vertex::kCapacity) {
      throw Error(ErrorCode::CapacityExceeded, std::to_string(n) + " hyperplanes exceed the capacity of " +
                                                   std::to_string(Vertex::kCapacity) + "; use the wide representation");
    }
  }

  std::size_t hyperplaneCount() const { return n_; }
  std::size_t vertexCount() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const WeightFunction& weights() const { return weights_; }

  BasicCubeComplex withWeights(WeightFunction w) const {
    if (w.size() != n_) throw Error(ErrorCode::LengthMismatch, "weight count differs from hyperplane count");
    BasicCubeComplex x = *this;
    x.weights_ = std::move(w);
    return x;
  }

  bool contains(const Vertex& v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  /// Position of v in the sorted vertex list.
  std::optional<std::size_t> indexOf(const Vertex& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  void requireVertex(const Vertex& v) const {
    if (!contains(v)) throw Error(ErrorCode::NotAVertex, v.toString(n_) + " is not a vertex", {v.toString(n_)});
  }

  void requireHyperplane(std::size_t i) const {
    if (i >= n_) {
      throw Error(ErrorCode::PreconditionFailed, "hyperplane index " + std::to_string(i) + " out of range",
                  {std::to_string(i)});
    }
  }

  HyperplaneSet allHyperplanes() const { return HyperplaneSet::lowMask(n_); }

  std::string format(const Vertex& v) const { return v.toString(n_); }

  /// Vertices lying in the halfspace.
  std::vector<Vertex> verticesIn(Halfspace h) const {
    std::vector<Vertex> out;
    for (const auto& v : vertices_) {
      if (h.contains(v)) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const BasicCubeComplex&, const BasicCubeComplex&) = default;

 private:
  std::size_t n_;
  std::vector<Vertex> vertices_;
  WeightFunction weights_;
};

using CubeComplex = BasicCubeComplex<kNarrowWords>;
using WideCubeComplex = BasicCubeComplex<kWideWords>;

/// Nonemptiness of pairwise halfspace intersections within a vertex set.
///
/// Row d (a dense halfspace index) holds the hyperplanes j whose positive
/// (resp. negative) side meets halfspace d.
template <std::size_t W>
class SideTable {
 public:
  SideTable() = default;

  SideTable(std::size_t n, const std::vector<BitVector<W>>& vertices) : n_(n), meetsPos_(2 * n), meetsNeg_(2 * n) {
    const auto full = BitVector<W>::lowMask(n);
    for (const auto& v : vertices) {
      const auto inv = ~v & full;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t d = v.test(i) ? 2 * i : 2 * i + 1;
        meetsPos_[d] |= v;
        meetsNeg_[d] |= inv;
      }
    }
  }

  explicit SideTable(const BasicCubeComplex<W>& x) : SideTable(x.hyperplaneCount(), x.vertices()) {}

  std::size_t hyperplaneCount() const { return n_; }

  bool meets(Halfspace a, Halfspace b) const {
    const auto& row = b.sign == Sign::Positive ? meetsPos_ : meetsNeg_;
    return row[a.dense()].test(b.hyperplane);
  }

  bool nonempty(Halfspace a) const { return meetsPos_[a.dense()].test(a.hyperplane) || meetsNeg_[a.dense()].test(a.hyperplane); }

  /// a ⊆ b as vertex sets (a nonempty, a ∩ b* empty).
  bool subset(Halfspace a, Halfspace b) const {
    if (a == b) return true;
    if (a.hyperplane == b.hyperplane) return false;
    return !meets(a, complement(b));
  }

  bool disjoint(Halfspace a, Halfspace b) const { return !meets(a, b); }

  bool transverse(std::size_t i, std::size_t j) const {
    if (i == j) return false;
    return meets(positive(i), positive(j)) && meets(positive(i), negative(j)) && meets(negative(i), positive(j)) &&
           meets(negative(i), negative(j));
  }

  /// Hyperplanes transverse to i.
  BitVector<W> transverseTo(std::size_t i) const {
    auto m = meetsPos_[2 * i] & meetsNeg_[2 * i] & meetsPos_[2 * i + 1] & meetsNeg_[2 * i + 1];
    m.reset(i);
    return m;
  }

  /// True iff every pair of halfspaces chosen by o meets.
  bool consistent(const BitVector<W>& o) const {
    const auto full = BitVector<W>::lowMask(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!consistentAt(o, i, full)) return false;
    }
    return true;
  }

  /// Consistency of the pairs involving hyperplane i.
  bool consistentAt(const BitVector<W>& o, std::size_t i, const BitVector<W>& full) const {
    const std::size_t d = o.test(i) ? 2 * i : 2 * i + 1;
    return (o & ~meetsPos_[d]).none() && ((~o & full) & ~meetsNeg_[d]).none();
  }

 private:
  std::size_t n_ = 0;
  std::vector<BitVector<W>> meetsPos_;
  std::vector<BitVector<W>> meetsNeg_;
};

namespace detail {

template <std::size_t W>
bool sortedContains(const std::vector<BitVector<W>>& sorted, const BitVector<W>& v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

/// Brute-force search for a triple whose majority is missing.
template <std::size_t W>
std::optional<std::array<BitVector<W>, 3>> findMajorityGap(const std::vector<BitVector<W>>& sorted,
                                                           std::size_t budget = 200'000'000) {
  const std::size_t m = sorted.size();
  std::size_t steps = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        if (++steps > budget) return std::nullopt;
        const auto med = majority(sorted[a], sorted[b], sorted[c]);
        if (!sortedContains(sorted, med)) return std::array<BitVector<W>, 3>{sorted[a], sorted[b], sorted[c]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks the three representation invariants of a vertex set: median
/// closure, connectivity of the Hamming-1 graph, and that every coordinate
/// takes both values. An empty report means the set is a valid complex.
///
/// For connected sets without redundant coordinates, median closure is
/// decided by looking for an orientation adjacent to the set that is
/// consistent with the set's own halfspace intersections: the consistent
/// orientations form a connected median set containing the input, so the
/// input is median-closed exactly when no such neighbour exists.
template <std::size_t W>
ValidationReport validateComplex(std::size_t n, std::vector<BitVector<W>> vertices) {
  ValidationReport report;
  if (n > BitVector<W>::kCapacity) {
    report.violations.push_back({Violation::Kind::LengthMismatch, "hyperplane count exceeds capacity", {}});
    return report;
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.empty()) {
    report.violations.push_back({Violation::Kind::Empty, "vertex set is empty", {}});
    return report;
  }
  const auto full = BitVector<W>::lowMask(n);
  for (const auto& v : vertices) {
    if ((v & ~full).any()) {
      report.violations.push_back({Violation::Kind::LengthMismatch, "vertex has bits beyond the hyperplane count", {}});
      return report;
    }
  }

  BitVector<W> seenOne;
  BitVector<W> seenZero;
  for (const auto& v : vertices) {
    seenOne |= v;
    seenZero |= ~v & full;
  }
  const auto constant = full & ~(seenOne & seenZero);
  constant.forEach([&](std::size_t i) {
    report.violations.push_back({Violation::Kind::RedundantCoordinate,
                                 "hyperplane " + std::to_string(i) + " takes only one value on the vertex set",
                                 {std::to_string(i)}});
  });

  std::vector<char> reached(vertices.size(), 0);
  std::deque<std::size_t> queue{0};
  reached[0] = 1;
  std::size_t reachedCount = 1;
  while (!queue.empty()) {
    const auto cur = vertices[queue.front()];
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      const auto nb = cur.flipped(i);
      auto it = std::lower_bound(vertices.begin(), vertices.end(), nb);
      if (it != vertices.end() && *it == nb) {
        const auto idx = static_cast<std::size_t>(it - vertices.begin());
        if (!reached[idx]) {
          reached[idx] = 1;
          ++reachedCount;
          queue.push_back(idx);
        }
      }
    }
  }
  const bool connected = reachedCount == vertices.size();
  if (!connected) {
    std::size_t firstUnreached = 0;
    while (reached[firstUnreached]) ++firstUnreached;
    report.violations.push_back({Violation::Kind::Disconnected,
                                 "vertex set is disconnected at Hamming distance 1",
                                 {vertices[0].toString(n), vertices[firstUnreached].toString(n)}});
  }

  bool closed = true;
  std::optional<BitVector<W>> missingConsistent;
  if (connected && constant.none()) {
    const SideTable<W> table(n, vertices);
    for (const auto& v : vertices) {
      for (std::size_t i = 0; i < n && !missingConsistent; ++i) {
        const auto nb = v.flipped(i);
        if (detail::sortedContains(vertices, nb)) continue;
        if (table.consistent(nb)) missingConsistent = nb;
      }
      if (missingConsistent) break;
    }
    closed = !missingConsistent;
  }
  if (!closed || !connected || constant.any()) {
    // Without the certificate (or to name a witness) fall back to triples.
    auto gap = detail::findMajorityGap(vertices);
    if (gap) {
      const auto& t = *gap;
      const auto med = majority(t[0], t[1], t[2]);
      report.violations.push_back({Violation::Kind::MedianClosure,
                                   "majority(" + t[0].toString(n) + "," + t[1].toString(n) + "," + t[2].toString(n) +
                                       ")=" + med.toString(n) + " missing",
                                   {t[0].toString(n), t[1].toString(n), t[2].toString(n), med.toString(n)}});
    } else if (!closed) {
      report.violations.push_back({Violation::Kind::MedianClosure,
                                   "consistent orientation " + missingConsistent->toString(n) + " is missing",
                                   {missingConsistent->toString(n)}});
    }
  }
  return report;
}

/// Coordinate restriction of a vertex onto the listed hyperplanes, in order.
template <std::size_t W, std::size_t V>
BitVector<V> restrictBits(const BitVector<W>& v, const std::vector<std::size_t>& onto) {
  BitVector<V> out;
  for (std::size_t k = 0; k < onto.size(); ++k) {
    if (v.test(onto[k])) out.set(k);
  }
  return out;
}

/// Same complex in a representation with a different word count.
template <std::size_t Out, std::size_t W>
BasicCubeComplex<Out> convertComplex(const BasicCubeComplex<W>& x) {
  BasicCubeComplex<Out>::checkCapacity(x.hyperplaneCount());
  std::vector<BitVector<Out>> vs;
  vs.reserve(x.vertexCount());
  for (const auto& v : x.vertices()) {
    BitVector<Out> o;
    v.forEach([&](std::size_t i) { o.set(i); });
    vs.push_back(o);
  }
  return BasicCubeComplex<Out>::fromTrustedVertices(x.hyperplaneCount(), std::move(vs), x.weights());
}

/// Image of the vertex set under restriction to `onto`; always a valid complex.
template <std::size_t W>
BasicCubeComplex<W> restrictComplex(const BasicCubeComplex<W>& x, const std::vector<std::size_t>& onto) {
  std::vector<BitVector<W>> image;
  image.reserve(x.vertexCount());
  for (const auto& v : x.vertices()) image.push_back(restrictBits<W, W>(v, onto));
  std::vector<Length> w;
  w.reserve(onto.size());
  for (auto i : onto) w.push_back(x.weights()[i]);
  return BasicCubeComplex<W>::fromTrustedVertices(onto.size(), std::move(image), WeightFunction(std::move(w)));
}

}  // namespace cubical
