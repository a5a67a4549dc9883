#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/complex.hpp"
#include "cubical/error.hpp"
#include "cubical/median.hpp"

namespace cubical {

/// A finite tree (no transverse hyperplanes) with edge lengths given by the
/// weights and a distinguished vertex set containing every leaf.
template <std::size_t W>
class MetricTree {
 public:
  MetricTree() = default;

  MetricTree(BasicCubeComplex<W> tree, std::vector<BitVector<W>> distinguished)
      : tree_(std::move(tree)), distinguished_(std::move(distinguished)) {
    const SideTable<W> table(tree_);
    for (std::size_t i = 0; i < tree_.hyperplaneCount(); ++i) {
      if (table.transverseTo(i).any()) {
        throw Error(ErrorCode::NotATree, "hyperplane " + std::to_string(i) + " has a transverse partner", {std::to_string(i)});
      }
    }
    for (const auto& v : distinguished_) tree_.requireVertex(v);
    std::sort(distinguished_.begin(), distinguished_.end());
    distinguished_.erase(std::unique(distinguished_.begin(), distinguished_.end()), distinguished_.end());
    for (const auto& v : tree_.vertices()) {
      if (degree(v) <= 1 && !std::binary_search(distinguished_.begin(), distinguished_.end(), v)) {
        throw Error(ErrorCode::LeafNotCovered, "leaf " + tree_.format(v) + " is not distinguished", {tree_.format(v)});
      }
    }
  }

  /// Distinguished set = all leaves.
  static MetricTree withLeaves(BasicCubeComplex<W> tree) {
    std::vector<BitVector<W>> leaves;
    for (const auto& v : tree.vertices()) {
      std::size_t d = 0;
      for (std::size_t i = 0; i < tree.hyperplaneCount(); ++i) d += tree.contains(v.flipped(i));
      if (d <= 1) leaves.push_back(v);
    }
    return MetricTree(std::move(tree), std::move(leaves));
  }

  const BasicCubeComplex<W>& complex() const { return tree_; }
  const std::vector<BitVector<W>>& distinguished() const { return distinguished_; }

  std::size_t degree(const BitVector<W>& v) const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < tree_.hyperplaneCount(); ++i) d += tree_.contains(v.flipped(i));
    return d;
  }

  Length distance(const BitVector<W>& a, const BitVector<W>& b) const { return tree_.weights().measure(a ^ b); }

 private:
  BasicCubeComplex<W> tree_;
  std::vector<BitVector<W>> distinguished_;
};

/// A point of a metric tree: at distance `offset` from vertex `from` along
/// the edge toward `to`. Vertices have from == to and offset 0.
template <std::size_t W>
struct TreePoint {
  BitVector<W> from;
  BitVector<W> to;
  Length offset = 0;

  bool isVertex() const { return from == to; }
  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

template <std::size_t W>
Length treePointDistance(const MetricTree<W>& t, const TreePoint<W>& p, const TreePoint<W>& q) {
  auto edgeLength = [&](const TreePoint<W>& a) { return a.isVertex() ? Length{0} : t.distance(a.from, a.to); };
  if (!p.isVertex() && !q.isVertex()) {
    if (p.from == q.from && p.to == q.to) return std::fabs(p.offset - q.offset);
    if (p.from == q.to && p.to == q.from) return std::fabs(p.offset - (edgeLength(q) - q.offset));
  }
  const std::pair<BitVector<W>, Length> pe[2] = {{p.from, p.offset}, {p.to, edgeLength(p) - p.offset}};
  const std::pair<BitVector<W>, Length> qe[2] = {{q.from, q.offset}, {q.to, edgeLength(q) - q.offset}};
  Length best = std::numeric_limits<Length>::infinity();
  for (const auto& [a, da] : pe) {
    for (const auto& [b, db] : qe) best = std::min(best, da + t.distance(a, b) + db);
  }
  return best;
}

/// Point at distance s from a along the geodesic from a to b.
template <std::size_t W>
TreePoint<W> pointAlong(const MetricTree<W>& t, const BitVector<W>& a, const BitVector<W>& b, Length s) {
  constexpr Length eps = 1e-9;
  const auto& x = t.complex();
  auto cur = a;
  Length walked = 0;
  while (cur != b) {
    std::optional<BitVector<W>> next;
    (cur ^ b).forEach([&](std::size_t i) {
      if (!next && x.contains(cur.flipped(i))) next = cur.flipped(i);
    });
    ensure(next.has_value(), "no step toward the target in a tree");
    const Length len = t.distance(cur, *next);
    if (std::fabs(walked - s) <= eps) return {cur, cur, 0};
    if (walked + len > s + eps) return {cur, *next, s - walked};
    walked += len;
    cur = *next;
  }
  ensure(std::fabs(walked - s) <= eps * std::max(Length{1}, s), "point lies beyond the geodesic");
  return {cur, cur, 0};
}

template <std::size_t W>
struct LeafIsometry {
  /// image[k] is the image of the k-th vertex of the source tree.
  std::vector<BitVector<W>> source;
  std::vector<TreePoint<W>> image;

  const TreePoint<W>& operator()(const BitVector<W>& v) const {
    auto it = std::lower_bound(source.begin(), source.end(), v);
    ensure(it != source.end() && *it == v, "vertex outside the isometry's domain");
    return image[static_cast<std::size_t>(it - source.begin())];
  }
};

/// Extends a distance-preserving bijection between distinguished sets to
/// the whole tree: a vertex z on the geodesic [x,y] of T1 goes to the point
/// at distance d(x,z) from ψx on [ψx,ψy].
template <std::size_t W>
LeafIsometry<W> extendLeafIsometry(const MetricTree<W>& t1, const MetricTree<W>& t2,
                                   const std::vector<std::pair<BitVector<W>, BitVector<W>>>& psi) {
  auto close = [](Length a, Length b) { return std::fabs(a - b) <= 1e-9 * std::max({Length{1}, std::fabs(a), std::fabs(b)}); };
  const auto& x1 = t1.complex();
  const auto& x2 = t2.complex();
  std::vector<std::pair<BitVector<W>, BitVector<W>>> map = psi;
  std::sort(map.begin(), map.end());
  for (const auto& [a, b] : map) {
    x1.requireVertex(a);
    x2.requireVertex(b);
  }
  for (std::size_t i = 0; i + 1 < map.size(); ++i) {
    if (map[i].first == map[i + 1].first) {
      throw Error(ErrorCode::PreconditionFailed, "vertex " + x1.format(map[i].first) + " is mapped twice",
                  {x1.format(map[i].first)});
    }
  }
  std::vector<BitVector<W>> domain;
  for (const auto& [a, b] : map) domain.push_back(a);
  for (const auto& v : t1.distinguished()) {
    if (!std::binary_search(domain.begin(), domain.end(), v)) {
      throw Error(ErrorCode::LeafNotCovered, "distinguished vertex " + x1.format(v) + " has no image", {x1.format(v)});
    }
  }
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = i + 1; j < map.size(); ++j) {
      const Length d1 = t1.distance(map[i].first, map[j].first);
      const Length d2 = t2.distance(map[i].second, map[j].second);
      if (!close(d1, d2)) {
        throw Error(ErrorCode::NotDistancePreserving,
                    "d(" + x1.format(map[i].first) + "," + x1.format(map[j].first) + ") differs from the image distance",
                    {x1.format(map[i].first), x1.format(map[j].first)});
      }
    }
  }
  std::vector<BitVector<W>> range;
  for (const auto& [a, b] : map) range.push_back(b);
  std::sort(range.begin(), range.end());
  if (range != t2.distinguished()) {
    throw Error(ErrorCode::PreconditionFailed, "the map is not a bijection onto the distinguished set of the target");
  }

  LeafIsometry<W> out;
  out.source = x1.vertices();
  for (const auto& z : x1.vertices()) {
    std::optional<TreePoint<W>> img;
    for (std::size_t i = 0; i < map.size() && !img; ++i) {
      for (std::size_t j = i; j < map.size() && !img; ++j) {
        if (!between(map[i].first, map[j].first, z)) continue;
        img = pointAlong(t2, map[i].second, map[j].second, t1.distance(map[i].first, z));
      }
    }
    ensure(img.has_value(), "vertex lies on no geodesic between distinguished vertices");
    out.image.push_back(*img);
  }
  for (std::size_t i = 0; i < out.source.size(); ++i) {
    for (std::size_t j = i + 1; j < out.source.size(); ++j) {
      ensure(close(t1.distance(out.source[i], out.source[j]), treePointDistance(t2, out.image[i], out.image[j])),
             "extension is not an isometry");
    }
  }
  return out;
}

}  // namespace cubical
