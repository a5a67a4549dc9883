#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cubical/complex.hpp"
#include "cubical/error.hpp"
#include "cubical/median.hpp"
#include "cubical/weights.hpp"

namespace cubical {

/// Hyperplanes with a and b on one side and c and d on the other.
template <std::size_t W>
BitVector<W> separatorMask(const BitVector<W>& a, const BitVector<W>& b, const BitVector<W>& c, const BitVector<W>& d) {
  return ~(a ^ b) & ~(c ^ d) & (a ^ c);
}

/// The three pairing separator sets of a 4-tuple (x,y,z,w).
template <std::size_t W>
struct SeparatorSets {
  BitVector<W> xyzw;  // 𝒲(x,y|z,w)
  BitVector<W> xzyw;  // 𝒲(x,z|y,w)
  BitVector<W> xwyz;  // 𝒲(x,w|y,z)
};

template <std::size_t W>
SeparatorSets<W> separatorSets(const BitVector<W>& x, const BitVector<W>& y, const BitVector<W>& z, const BitVector<W>& w) {
  return {separatorMask(x, y, z, w), separatorMask(x, z, y, w), separatorMask(x, w, y, z)};
}

struct CrossRatioOptions {
  /// Accept tuples with repeated entries (no three equal), returning 0 or ±infinity.
  bool extended = false;
};

namespace detail {

inline bool closeEnough(Length a, Length b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  const Length scale = std::max({Length{1}, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-9 * scale;
}

template <std::size_t W>
void requireVertices(const BasicCubeComplex<W>& x, std::initializer_list<const BitVector<W>*> vs) {
  for (const auto* v : vs) x.requireVertex(*v);
}

/// Value for tuples with repetitions, or nullopt when all four are distinct.
template <std::size_t W>
std::optional<Length> degenerateCrossRatio(const BasicCubeComplex<W>& x, const std::array<BitVector<W>, 4>& t,
                                           const CrossRatioOptions& opt) {
  bool anyEqual = false;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) anyEqual |= t[i] == t[j];
  }
  if (!anyEqual) return std::nullopt;
  auto witness = [&] {
    return std::vector<std::string>{x.format(t[0]), x.format(t[1]), x.format(t[2]), x.format(t[3])};
  };
  for (int skip = 0; skip < 4; ++skip) {
    std::vector<BitVector<W>> rest;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) rest.push_back(t[i]);
    }
    if (rest[0] == rest[1] && rest[1] == rest[2]) {
      throw Error(ErrorCode::NotDistinct, "three entries of the 4-tuple coincide", witness());
    }
  }
  if (!opt.extended) throw Error(ErrorCode::NotDistinct, "entries of the 4-tuple are not pairwise distinct", witness());
  constexpr Length inf = std::numeric_limits<Length>::infinity();
  if (t[0] == t[1] || t[2] == t[3]) return 0.0;
  if (t[0] == t[2] || t[1] == t[3]) return inf;
  return -inf;  // t[0] == t[3] or t[1] == t[2]
}

}  // namespace detail

/// (x·y)_p = μ(𝒲(p|x,y)); checked against d(p, m(p,x,y)).
template <std::size_t W>
Length gromovProduct(const BasicCubeComplex<W>& x, const WeightFunction& mu, const BitVector<W>& p, const BitVector<W>& a,
                     const BitVector<W>& b) {
  detail::requireVertices(x, {&p, &a, &b});
  const Length bySeparators = mu.measure((p ^ a) & (p ^ b));
  const Length byMedian = distance(x, mu, p, median(x, p, a, b));
  ensure(detail::closeEnough(bySeparators, byMedian), "Gromov product characterisations disagree");
  return bySeparators;
}

template <std::size_t W>
Length gromovProduct(const BasicCubeComplex<W>& x, const BitVector<W>& p, const BitVector<W>& a, const BitVector<W>& b) {
  return gromovProduct(x, x.weights(), p, a, b);
}

/// cr(x,y,z,w) = μ(𝒲(x,z|y,w)) − μ(𝒲(x,w|y,z)), checked against the Gromov-product form.
template <std::size_t W>
Length crossRatio(const BasicCubeComplex<W>& X, const WeightFunction& mu, const BitVector<W>& x, const BitVector<W>& y,
                  const BitVector<W>& z, const BitVector<W>& w, CrossRatioOptions opt = {}) {
  detail::requireVertices(X, {&x, &y, &z, &w});
  if (auto v = detail::degenerateCrossRatio(X, {x, y, z, w}, opt)) return *v;
  const auto s = separatorSets(x, y, z, w);
  const Length value = mu.measure(s.xzyw) - mu.measure(s.xwyz);
  const auto& p = X.vertices().front();
  const Length viaProducts = gromovProduct(X, mu, p, x, z) + gromovProduct(X, mu, p, y, w) - gromovProduct(X, mu, p, x, w) -
                             gromovProduct(X, mu, p, y, z);
  ensure(detail::closeEnough(value, viaProducts), "cross ratio characterisations disagree");
  return value;
}

template <std::size_t W>
Length crossRatio(const BasicCubeComplex<W>& X, const BitVector<W>& x, const BitVector<W>& y, const BitVector<W>& z,
                  const BitVector<W>& w, CrossRatioOptions opt = {}) {
  return crossRatio(X, X.weights(), x, y, z, w, opt);
}

/// Half of d(x,w)+d(y,z)−d(x,z)−d(y,w); the unhalved sum is twice the cross ratio.
template <std::size_t W>
Length crossRatioViaDistances(const BasicCubeComplex<W>& X, const WeightFunction& mu, const BitVector<W>& x,
                              const BitVector<W>& y, const BitVector<W>& z, const BitVector<W>& w) {
  detail::requireVertices(X, {&x, &y, &z, &w});
  detail::degenerateCrossRatio(X, {x, y, z, w}, {});
  const Length sum = distance(X, mu, x, w) + distance(X, mu, y, z) - distance(X, mu, x, z) - distance(X, mu, y, w);
  const Length value = sum / 2;
  ensure(detail::closeEnough(value, crossRatio(X, mu, x, y, z, w)), "halved distance form disagrees with the cross ratio");
  return value;
}

template <std::size_t W>
Length crossRatioViaDistances(const BasicCubeComplex<W>& X, const BitVector<W>& x, const BitVector<W>& y,
                              const BitVector<W>& z, const BitVector<W>& w) {
  return crossRatioViaDistances(X, X.weights(), x, y, z, w);
}

/// Cross ratio counting only hyperplanes in u.
template <std::size_t W>
Length crossRatioRestricted(const BasicCubeComplex<W>& X, const BitVector<W>& u, const BitVector<W>& x,
                            const BitVector<W>& y, const BitVector<W>& z, const BitVector<W>& w) {
  detail::requireVertices(X, {&x, &y, &z, &w});
  detail::degenerateCrossRatio(X, {x, y, z, w}, {});
  const auto s = separatorSets(x, y, z, w);
  const auto& mu = X.weights();
  return mu.measure(s.xzyw & u) - mu.measure(s.xwyz & u);
}

template <std::size_t W>
struct TrustRecord {
  std::array<BitVector<W>, 4> tuple;
  BitVector<W> restriction;
  SeparatorSets<W> sets;  // already intersected with the restriction
  Length xyzw = 0;
  Length xzyw = 0;
  Length xwyz = 0;
  bool trustworthy = false;
};

template <std::size_t W>
TrustRecord<W> isTrustworthy(const BasicCubeComplex<W>& X, const BitVector<W>& u, const std::array<BitVector<W>, 4>& t) {
  detail::requireVertices(X, {&t[0], &t[1], &t[2], &t[3]});
  detail::degenerateCrossRatio(X, t, {});
  TrustRecord<W> r;
  r.tuple = t;
  r.restriction = u;
  r.sets = separatorSets(t[0], t[1], t[2], t[3]);
  r.sets.xyzw &= u;
  r.sets.xzyw &= u;
  r.sets.xwyz &= u;
  const auto& mu = X.weights();
  r.xyzw = mu.measure(r.sets.xyzw);
  r.xzyw = mu.measure(r.sets.xzyw);
  r.xwyz = mu.measure(r.sets.xwyz);
  r.trustworthy = r.sets.xyzw.none() || r.sets.xzyw.none() || r.sets.xwyz.none();
  return r;
}

template <std::size_t W>
struct SeparatingQuadruple {
  std::array<BitVector<W>, 4> tuple;  // x̄, ȳ ∈ P and z̄, w̄ ∈ Q
  BitVector<W> tupleSeparators;       // 𝒰(x̄,ȳ|z̄,w̄)
  BitVector<W> partitionSeparators;   // 𝒰(P|Q)
};

/// Minimises #𝒰(x,y|z,w) over x,y ∈ P and z,w ∈ Q, and checks that the
/// minimiser's separators are exactly those of the whole partition.
template <std::size_t W>
SeparatingQuadruple<W> separatingQuadruple(const BasicCubeComplex<W>& X, const BitVector<W>& u,
                                           const std::vector<BitVector<W>>& P, const std::vector<BitVector<W>>& Q) {
  auto fail = [&](const std::string& what, std::vector<BitVector<W>> tuple) {
    std::vector<std::string> witness;
    for (const auto& v : tuple) witness.push_back(X.format(v));
    throw Error(ErrorCode::PreconditionFailed, what, witness);
  };
  if (P.size() < 2 || Q.size() < 2) fail("both parts need at least two vertices", {});
  std::vector<BitVector<W>> all;
  for (const auto& v : P) {
    X.requireVertex(v);
    all.push_back(v);
  }
  for (const auto& v : Q) {
    X.requireVertex(v);
    if (std::find(P.begin(), P.end(), v) != P.end()) fail("parts are not disjoint", {v});
    all.push_back(v);
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) fail("a part lists a vertex twice", {});

  // Tuples with a repeated entry are always trustworthy; checking 4-subsets suffices.
  const std::size_t m = all.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        for (std::size_t d = c + 1; d < m; ++d) {
          if (!isTrustworthy(X, u, {all[a], all[b], all[c], all[d]}).trustworthy) {
            fail("4-tuple is not trustworthy", {all[a], all[b], all[c], all[d]});
          }
        }
      }
    }
  }

  SeparatingQuadruple<W> best;
  std::optional<std::size_t> bestCount;
  for (const auto& x : P) {
    for (const auto& y : P) {
      for (const auto& z : Q) {
        for (const auto& w : Q) {
          const auto s = separatorMask(x, y, z, w) & u;
          if (s.none()) fail("separator set is empty", {x, y, z, w});
          if (!bestCount || s.count() < *bestCount) {
            bestCount = s.count();
            best.tuple = {x, y, z, w};
            best.tupleSeparators = s;
          }
        }
      }
    }
  }

  auto fixedSide = [&](const std::vector<BitVector<W>>& part, BitVector<W>& values) {
    BitVector<W> ones;
    BitVector<W> zeros;
    const auto full = X.allHyperplanes();
    for (const auto& v : part) {
      ones |= v;
      zeros |= ~v & full;
    }
    values = ones;
    return full & ~(ones & zeros);
  };
  BitVector<W> pv;
  BitVector<W> qv;
  const auto pf = fixedSide(P, pv);
  const auto qf = fixedSide(Q, qv);
  best.partitionSeparators = pf & qf & (pv ^ qv) & u;
  ensure(best.partitionSeparators == best.tupleSeparators, "minimising quadruple does not realise the partition separators");
  return best;
}

}  // namespace cubical
