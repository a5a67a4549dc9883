#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cubical/complex.hpp"
#include "cubical/error.hpp"
#include "cubical/halfspace.hpp"
#include "cubical/pocset.hpp"

namespace cubical {

/// Inclusion h ⊆ k between halfspaces.
struct Inclusion {
  Halfspace sub;
  Halfspace sup;
  friend constexpr bool operator==(const Inclusion&, const Inclusion&) = default;
  friend constexpr auto operator<=>(const Inclusion&, const Inclusion&) = default;
};

/// A finite pocset on n hyperplanes, given by generating inclusions and
/// closed under transitivity and the order-reversing involution.
template <std::size_t W>
class AbstractPocset {
 public:
  AbstractPocset(std::size_t n, const std::vector<Inclusion>& relations) : n_(n) {
    BasicCubeComplex<W>::checkCapacity(n);
    const std::size_t m = 2 * n;
    std::vector<std::vector<char>> reach(m, std::vector<char>(m, 0));
    for (std::size_t d = 0; d < m; ++d) reach[d][d] = 1;
    for (const auto& r : relations) {
      if (r.sub.hyperplane >= n || r.sup.hyperplane >= n) {
        throw Error(ErrorCode::PreconditionFailed,
                    "relation " + toString(r.sub) + " <= " + toString(r.sup) + " references a hyperplane out of range",
                    {toString(r.sub), toString(r.sup)});
      }
      reach[r.sub.dense()][r.sup.dense()] = 1;
      reach[complement(r.sup).dense()][complement(r.sub).dense()] = 1;
    }
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        if (!reach[i][k]) continue;
        for (std::size_t j = 0; j < m; ++j) reach[i][j] |= reach[k][j];
      }
    }
    mustPos_.assign(m, {});
    mustNeg_.assign(m, {});
    for (std::size_t a = 0; a < m; ++a) {
      const auto ha = Halfspace::fromDense(a);
      if (reach[a][complement(ha).dense()]) {
        throw Error(ErrorCode::InconsistentPocset, "halfspace " + toString(ha) + " is forced inside its complement",
                    {toString(ha)});
      }
      for (std::size_t b = 0; b < m; ++b) {
        if (!reach[a][b]) continue;
        const auto hb = Halfspace::fromDense(b);
        if (a != b && reach[b][a]) {
          throw Error(ErrorCode::InconsistentPocset,
                      "halfspaces " + toString(ha) + " and " + toString(hb) + " are forced equal", {toString(ha), toString(hb)});
        }
        (hb.sign == Sign::Positive ? mustPos_ : mustNeg_)[a].set(hb.hyperplane);
      }
    }
  }

  std::size_t hyperplaneCount() const { return n_; }

  bool leq(Halfspace a, Halfspace b) const {
    return (b.sign == Sign::Positive ? mustPos_ : mustNeg_)[a.dense()].test(b.hyperplane);
  }

  /// Every chosen halfspace's up-set is chosen.
  bool consistent(const BitVector<W>& o) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t d = o.test(i) ? 2 * i : 2 * i + 1;
      if ((mustPos_[d] & ~o).any() || (mustNeg_[d] & o).any()) return false;
    }
    return true;
  }

  /// A consistent orientation; greedy choice over the closed implication order.
  BitVector<W> seed() const {
    BitVector<W> o;
    BitVector<W> assigned;
    for (std::size_t i = 0; i < n_; ++i) {
      if (assigned.test(i)) continue;
      const std::size_t d = 2 * i;  // the closure guarantees h_i+ is not below h_i-
      o |= mustPos_[d];
      o &= ~mustNeg_[d];
      assigned |= mustPos_[d] | mustNeg_[d];
    }
    ensure(consistent(o), "greedy seed orientation is inconsistent");
    return o;
  }

  /// Flip-connected component of consistent orientations containing `start`.
  std::vector<BitVector<W>> component(const BitVector<W>& start) const {
    if (!consistent(start)) throw Error(ErrorCode::InconsistentPocset, "seed orientation is inconsistent");
    std::unordered_set<BitVector<W>> seen{start};
    std::deque<BitVector<W>> queue{start};
    std::vector<BitVector<W>> out;
    while (!queue.empty()) {
      const auto cur = queue.front();
      queue.pop_front();
      out.push_back(cur);
      for (std::size_t i = 0; i < n_; ++i) {
        auto nb = cur.flipped(i);
        if (seen.count(nb) || !consistent(nb)) continue;
        seen.insert(nb);
        queue.push_back(nb);
      }
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<BitVector<W>> mustPos_;
  std::vector<BitVector<W>> mustNeg_;
};

/// Sageev's construction on an abstract pocset.
template <std::size_t W = kNarrowWords>
BasicCubeComplex<W> complexFromPocset(const std::vector<Inclusion>& relations, std::size_t n) {
  const AbstractPocset<W> pocset(n, relations);
  return BasicCubeComplex<W>::fromTrustedVertices(n, pocset.component(pocset.seed()));
}

/// Same, seeded at a chosen consistent orientation.
template <std::size_t W>
BasicCubeComplex<W> complexFromPocset(const std::vector<Inclusion>& relations, std::size_t n, const BitVector<W>& seed) {
  const AbstractPocset<W> pocset(n, relations);
  return BasicCubeComplex<W>::fromTrustedVertices(n, pocset.component(seed));
}

/// Ground set {0..groundSize-1} with walls given by one block each.
struct WallSpace {
  std::size_t groundSize = 0;
  std::vector<std::vector<std::size_t>> walls;
  std::size_t basePoint = 0;
};

template <std::size_t W>
struct WallspaceDual {
  BasicCubeComplex<W> complex;
  std::size_t basePoint = 0;
  /// Principal orientation of each ground point (walls oriented toward it).
  std::vector<BitVector<W>> principal;
  /// Whether every ground point's principal orientation lies in the returned component.
  bool allPointsInComponent = true;
};

template <std::size_t W = kNarrowWords>
WallspaceDual<W> complexFromWallspace(const WallSpace& ws) {
  const std::size_t g = ws.groundSize;
  const std::size_t n = ws.walls.size();
  BasicCubeComplex<W>::checkCapacity(n);
  if (ws.basePoint >= g) {
    throw Error(ErrorCode::InvalidWall, "base point " + std::to_string(ws.basePoint) + " is outside the ground set");
  }
  std::vector<std::vector<char>> block(n, std::vector<char>(g, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto p : ws.walls[i]) {
      if (p >= g) throw Error(ErrorCode::InvalidWall, "wall " + std::to_string(i) + " names point " + std::to_string(p) + " outside the ground set", {std::to_string(i)});
      block[i][p] = 1;
    }
    const auto size = static_cast<std::size_t>(std::count(block[i].begin(), block[i].end(), 1));
    if (size == 0 || size == g) {
      throw Error(ErrorCode::InvalidWall, "wall " + std::to_string(i) + " has an empty block", {std::to_string(i)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool same = true;
      bool opposite = true;
      for (std::size_t p = 0; p < g; ++p) {
        same &= block[i][p] == block[j][p];
        opposite &= block[i][p] != block[j][p];
      }
      if (same || opposite) {
        throw Error(ErrorCode::InvalidWall, "walls " + std::to_string(i) + " and " + std::to_string(j) + " induce the same partition",
                    {std::to_string(i), std::to_string(j)});
      }
    }
  }

  auto inSide = [&](Halfspace h, std::size_t p) { return (block[h.hyperplane][p] != 0) == (h.sign == Sign::Positive); };
  std::vector<Inclusion> relations;
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      const auto ha = Halfspace::fromDense(a);
      const auto hb = Halfspace::fromDense(b);
      if (ha.hyperplane == hb.hyperplane) continue;
      bool sub = true;
      for (std::size_t p = 0; p < g && sub; ++p) sub = !inSide(ha, p) || inSide(hb, p);
      if (sub) relations.push_back({ha, hb});
    }
  }

  WallspaceDual<W> out;
  out.basePoint = ws.basePoint;
  for (std::size_t p = 0; p < g; ++p) {
    BitVector<W> o;
    for (std::size_t i = 0; i < n; ++i) {
      if (block[i][p]) o.set(i);
    }
    out.principal.push_back(o);
  }
  const AbstractPocset<W> pocset(n, relations);
  out.complex = BasicCubeComplex<W>::fromTrustedVertices(n, pocset.component(out.principal[ws.basePoint]));
  for (const auto& o : out.principal) out.allPointsInComponent &= out.complex.contains(o);
  return out;
}

/// Transitive reduction of halfspace inclusion (both an inclusion and its dual are listed).
template <std::size_t W>
std::vector<Inclusion> pocsetOfComplex(const BasicCubeComplex<W>& x) {
  const SideTable<W> table(x);
  const std::size_t m = 2 * x.hyperplaneCount();
  auto strictly = [&](std::size_t a, std::size_t b) {
    return a != b && table.subset(Halfspace::fromDense(a), Halfspace::fromDense(b));
  };
  std::vector<Inclusion> out;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (!strictly(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < m && covered; ++c) {
        if (strictly(a, c) && strictly(c, b)) covered = false;
      }
      if (covered) out.push_back({Halfspace::fromDense(a), Halfspace::fromDense(b)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A cube: base vertex with all spanned bits cleared plus its spanned hyperplanes.
template <std::size_t W>
struct Cube {
  BitVector<W> base;
  BitVector<W> spanned;
  std::size_t dimension() const { return spanned.count(); }
  friend bool operator==(const Cube&, const Cube&) = default;
};

/// All k-cubes, each reported once at its lexicographically least vertex.
template <std::size_t W>
std::vector<Cube<W>> cubes(const BasicCubeComplex<W>& x, std::size_t k) {
  std::vector<Cube<W>> out;
  const std::size_t n = x.hyperplaneCount();
  if (k > n) return out;
  for (const auto& v : x.vertices()) {
    std::vector<std::size_t> up;
    for (std::size_t i = 0; i < n; ++i) {
      if (!v.test(i) && x.contains(v.flipped(i))) up.push_back(i);
    }
    // Grow spanned sets in increasing index order; a cube on S ∪ {j} exists
    // iff the cubes on S at v and at v + e_j both exist.
    auto grow = [&](auto&& self, const BitVector<W>& spanned, std::size_t from, std::size_t dim) -> void {
      if (dim == k) {
        out.push_back({v, spanned});
        return;
      }
      for (std::size_t t = from; t < up.size(); ++t) {
        const std::size_t j = up[t];
        bool full = true;
        // every vertex of the current cube translated by e_j must exist
        auto sub = spanned;
        std::vector<std::size_t> idx = spanned.indices();
        const std::size_t total = std::size_t{1} << idx.size();
        for (std::size_t mask = 0; mask < total && full; ++mask) {
          auto corner = v;
          for (std::size_t b = 0; b < idx.size(); ++b) {
            if ((mask >> b) & 1U) corner.set(idx[b]);
          }
          corner.set(j);
          full = x.contains(corner);
        }
        (void)sub;
        if (full) {
          auto next = spanned;
          next.set(j);
          self(self, next, t + 1, dim + 1);
        }
      }
    };
    grow(grow, BitVector<W>{}, 0, 0);
  }
  return out;
}

/// Cube counts indexed by dimension.
template <std::size_t W>
std::vector<std::size_t> cubeCounts(const BasicCubeComplex<W>& x) {
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k <= x.hyperplaneCount(); ++k) {
    const auto c = cubes(x, k).size();
    if (c == 0) break;
    counts.push_back(c);
  }
  return counts;
}

/// Cartesian product; Y's hyperplanes are numbered after X's.
template <std::size_t W>
BasicCubeComplex<W> product(const BasicCubeComplex<W>& x, const BasicCubeComplex<W>& y) {
  const std::size_t nx = x.hyperplaneCount();
  const std::size_t ny = y.hyperplaneCount();
  BasicCubeComplex<W>::checkCapacity(nx + ny);
  std::vector<BitVector<W>> vs;
  vs.reserve(x.vertexCount() * y.vertexCount());
  for (const auto& a : x.vertices()) {
    for (const auto& b : y.vertices()) {
      auto v = a;
      b.forEach([&](std::size_t i) { v.set(nx + i); });
      vs.push_back(v);
    }
  }
  std::vector<Length> w = x.weights().values();
  w.insert(w.end(), y.weights().values().begin(), y.weights().values().end());
  return BasicCubeComplex<W>::fromTrustedVertices(nx + ny, std::move(vs), WeightFunction(std::move(w)));
}

template <std::size_t W>
struct Factor {
  std::vector<std::size_t> hyperplanes;
  BasicCubeComplex<W> complex;
};

/// De Rham decomposition: hyperplane classes connected under non-transversality.
template <std::size_t W>
std::vector<Factor<W>> irreducibleFactors(const BasicCubeComplex<W>& x) {
  const std::size_t n = x.hyperplaneCount();
  const SideTable<W> table(x);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!table.transverse(i, j)) parent[find(i)] = find(j);
    }
  }
  std::vector<Factor<W>> out;
  std::vector<char> done(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j = i; j < n; ++j) {
      if (find(j) == find(i)) {
        cls.push_back(j);
        done[j] = 1;
      }
    }
    out.push_back({cls, restrictComplex(x, cls)});
  }
  return out;
}

}  // namespace cubical
