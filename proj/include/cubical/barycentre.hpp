#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "cubical/complex.hpp"
#include "cubical/constructions.hpp"
#include "cubical/error.hpp"
#include "cubical/median.hpp"

namespace cubical {

/// Carrier of hyperplane w: the vertices with an edge dual to w.
template <std::size_t W>
ConvexSet<W> carrier(const BasicCubeComplex<W>& x, std::size_t w) {
  x.requireHyperplane(w);
  std::vector<BitVector<W>> vs;
  for (const auto& v : x.vertices()) {
    if (x.contains(v.flipped(w))) vs.push_back(v);
  }
  return ConvexSet<W>::fromConvexVertices(x, std::move(vs));
}

/// Distance from a vertex to a hyperplane: weight of the hyperplanes
/// separating the vertex from the hyperplane's carrier.
template <std::size_t W>
Length depthFrom(const BasicCubeComplex<W>& x, const ConvexSet<W>& carrierOfW, const BitVector<W>& v) {
  return x.weights().measure(separatingFromSet(carrierOfW, v));
}

/// Greatest distance from each hyperplane on its negative and positive side.
struct SideDepths {
  Length negative = 0;
  Length positive = 0;
};

template <std::size_t W>
std::vector<SideDepths> hyperplaneDepths(const BasicCubeComplex<W>& x) {
  std::vector<SideDepths> out(x.hyperplaneCount());
  for (std::size_t i = 0; i < x.hyperplaneCount(); ++i) {
    const auto c = carrier(x, i);
    for (const auto& v : x.vertices()) {
      auto& slot = v.test(i) ? out[i].positive : out[i].negative;
      slot = std::max(slot, depthFrom(x, c, v));
    }
  }
  return out;
}

struct HyperplaneBalance {
  std::size_t hyperplane = 0;
  SideDepths depths;
  bool balanced = false;
  std::optional<Halfspace> heavy;
};

template <std::size_t W>
struct BarycentreReport {
  std::vector<HyperplaneBalance> hyperplanes;
  BitVector<W> balanced;
  /// Intersection of all heavy halfspaces.
  ConvexSet<W> heavyCube;
  /// Median barycentre in subdivision coordinates (hyperplane i ↦ copies 2i, 2i+1).
  BitVector<W> centre;
  /// Set when no hyperplane is balanced: the barycentre is this vertex of X.
  std::optional<BitVector<W>> vertex;
};

namespace detail {

inline bool sameLength(Length a, Length b) { return std::fabs(a - b) <= 1e-9 * std::max({Length{1}, std::fabs(a), std::fabs(b)}); }

}  // namespace detail

/// Balanced/heavy classification of every hyperplane; ties are balanced.
template <std::size_t W>
std::vector<HyperplaneBalance> classifyHyperplanes(const BasicCubeComplex<W>& x) {
  const auto depths = hyperplaneDepths(x);
  std::vector<HyperplaneBalance> out;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    HyperplaneBalance b{i, depths[i], false, std::nullopt};
    b.balanced = detail::sameLength(depths[i].negative, depths[i].positive);
    if (!b.balanced) b.heavy = depths[i].positive > depths[i].negative ? positive(i) : negative(i);
    out.push_back(b);
  }
  return out;
}

/// The heavy-halfspace intersection, its balanced hyperplanes, and the centre.
template <std::size_t W>
BarycentreReport<W> medianBarycentre(const BasicCubeComplex<W>& x) {
  const std::size_t n = x.hyperplaneCount();
  BasicCubeComplex<W>::checkCapacity(2 * n);
  BarycentreReport<W> r;
  r.hyperplanes = classifyHyperplanes(x);
  std::vector<Halfspace> heavy;
  for (const auto& b : r.hyperplanes) {
    if (b.balanced) r.balanced.set(b.hyperplane);
    if (b.heavy) heavy.push_back(*b.heavy);
  }
  r.heavyCube = ConvexSet<W>::fromHalfspaces(x, heavy);
  ensure(!r.heavyCube.empty(), "heavy halfspaces have empty intersection");
  ensure(r.heavyCube.crossing(n) == r.balanced, "heavy intersection is not cut exactly by the balanced hyperplanes");
  ensure(r.heavyCube.size() == (std::size_t{1} << r.balanced.count()), "heavy intersection is not a single cube");
  const auto base = r.heavyCube.vertices().front() & ~r.balanced;
  r.centre = subdivisionCentre(base, r.balanced, n);
  if (r.balanced.none()) r.vertex = base;
  return r;
}

}  // namespace cubical
