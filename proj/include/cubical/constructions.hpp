#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cubical/complex.hpp"
#include "cubical/duality.hpp"
#include "cubical/error.hpp"
#include "cubical/median.hpp"

namespace cubical {

// First cubical subdivision. Hyperplane i of X becomes the nested pair
// 2i ⊇ 2i+1 (as positive halfspaces). A vertex with v_i = 0 reads (0,0),
// v_i = 1 reads (1,1), and a cube spanning i reads (1,0) at its centre.

/// Image of a vertex of X in the subdivision.
template <std::size_t W>
BitVector<W> subdivisionVertex(const BitVector<W>& v, std::size_t n) {
  BitVector<W> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (v.test(i)) {
      out.set(2 * i);
      out.set(2 * i + 1);
    }
  }
  return out;
}

/// Centre of the cube at `base` spanning `spanned`, as a subdivision vertex.
template <std::size_t W>
BitVector<W> subdivisionCentre(const BitVector<W>& base, const BitVector<W>& spanned, std::size_t n) {
  auto out = subdivisionVertex(base & ~spanned, n);
  spanned.forEach([&](std::size_t i) {
    out.set(2 * i);
    out.reset(2 * i + 1);
  });
  return out;
}

template <std::size_t W>
BasicCubeComplex<W> subdivide(const BasicCubeComplex<W>& x, bool preserveMetric = false) {
  const std::size_t n = x.hyperplaneCount();
  BasicCubeComplex<W>::checkCapacity(2 * n);
  std::vector<BitVector<W>> vs;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto cs = cubes(x, k);
    if (cs.empty()) break;
    for (const auto& c : cs) vs.push_back(subdivisionCentre(c.base, c.spanned, n));
  }
  std::vector<Length> w(2 * n, 1.0);
  if (preserveMetric) {
    for (std::size_t i = 0; i < n; ++i) w[2 * i] = w[2 * i + 1] = x.weights()[i] / 2;
  }
  return BasicCubeComplex<W>::fromTrustedVertices(2 * n, std::move(vs), WeightFunction(std::move(w)));
}

/// Squarisation: two transverse copies 2i, 2i+1 of every hyperplane, with
/// every inclusion between distinct hyperplanes inherited by all copies.
/// Vertices of X embed as (v_i, v_i); each copy keeps the parent's weight.
template <std::size_t W>
BasicCubeComplex<W> squarise(const BasicCubeComplex<W>& x) {
  const std::size_t n = x.hyperplaneCount();
  BasicCubeComplex<W>::checkCapacity(2 * n);
  const SideTable<W> table(x);
  std::vector<Inclusion> relations;
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      const auto h = Halfspace::fromDense(a);
      const auto k = Halfspace::fromDense(b);
      if (h.hyperplane == k.hyperplane || !table.subset(h, k)) continue;
      for (std::size_t ci = 0; ci < 2; ++ci) {
        for (std::size_t cj = 0; cj < 2; ++cj) {
          relations.push_back({{2 * h.hyperplane + ci, h.sign}, {2 * k.hyperplane + cj, k.sign}});
        }
      }
    }
  }
  const auto seed = subdivisionVertex(x.vertices().front(), n);
  auto out = complexFromPocset<W>(relations, 2 * n, seed);
  std::vector<Length> w(2 * n);
  for (std::size_t i = 0; i < n; ++i) w[2 * i] = w[2 * i + 1] = x.weights()[i];
  return out.withWeights(WeightFunction(std::move(w)));
}

/// Image of a vertex of X in its squarisation (same coordinates as the subdivision).
template <std::size_t W>
BitVector<W> squarisationVertex(const BitVector<W>& v, std::size_t n) {
  return subdivisionVertex(v, n);
}

/// Attaches a pendant edge at each listed vertex. Spine k is hyperplane n+k
/// with unit weight; its pendant vertex is the attach point with that bit set.
template <std::size_t W>
BasicCubeComplex<W> hedgehog(const BasicCubeComplex<W>& x, std::vector<BitVector<W>> attach) {
  if (attach.empty()) throw Error(ErrorCode::EmptyInput, "hedgehog needs at least one attach point");
  for (const auto& v : attach) x.requireVertex(v);
  std::sort(attach.begin(), attach.end());
  attach.erase(std::unique(attach.begin(), attach.end()), attach.end());
  const std::size_t n = x.hyperplaneCount();
  const std::size_t m = n + attach.size();
  BasicCubeComplex<W>::checkCapacity(m);
  std::vector<BitVector<W>> vs = x.vertices();
  for (std::size_t k = 0; k < attach.size(); ++k) vs.push_back(attach[k].flipped(n + k));
  std::vector<Length> w = x.weights().values();
  w.resize(m, 1.0);
  return BasicCubeComplex<W>::fromTrustedVertices(m, std::move(vs), WeightFunction(std::move(w)));
}

/// Restriction quotient onto a hyperplane subset, with its vertex map.
template <std::size_t W>
struct QuotientMap {
  std::vector<std::size_t> hyperplanes;  // sorted; quotient hyperplane k is source hyperplanes[k]
  BasicCubeComplex<W> quotient;

  BitVector<W> project(const BitVector<W>& v) const { return restrictBits<W, W>(v, hyperplanes); }
};

template <std::size_t W>
QuotientMap<W> restrictionQuotient(const BasicCubeComplex<W>& x, std::vector<std::size_t> u) {
  if (u.empty()) throw Error(ErrorCode::EmptyInput, "restriction quotient onto no hyperplanes");
  for (auto i : u) x.requireHyperplane(i);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  QuotientMap<W> q;
  q.quotient = restrictComplex(x, u);
  q.hyperplanes = std::move(u);
  return q;
}

/// The relation u ⪯ w (non-transverse with 𝒲(u) ⊆ 𝒲(w)) and its classes.
template <std::size_t W>
struct PreorderReport {
  std::vector<BitVector<W>> above;  // above[u] = { w : u ⪯ w }
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> classOf;

  bool leq(std::size_t u, std::size_t w) const { return above[u].test(w); }
  bool equivalent(std::size_t u, std::size_t w) const { return leq(u, w) && leq(w, u); }
  BitVector<W> classMask(std::size_t u) const { return BitVector<W>::fromIndices(classes[classOf[u]]); }
};

template <std::size_t W>
PreorderReport<W> hyperplanePreorder(const BasicCubeComplex<W>& x) {
  const std::size_t n = x.hyperplaneCount();
  const SideTable<W> table(x);
  std::vector<BitVector<W>> trans(n);
  for (std::size_t i = 0; i < n; ++i) trans[i] = table.transverseTo(i);
  PreorderReport<W> r;
  r.above.assign(n, {});
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < n; ++w) {
      if (u == w || (!trans[u].test(w) && trans[u].isSubsetOf(trans[w]))) r.above[u].set(w);
    }
  }
  r.classOf.assign(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    if (r.classOf[u] != n) continue;
    std::vector<std::size_t> cls;
    for (std::size_t w = u; w < n; ++w) {
      if (r.equivalent(u, w)) {
        r.classOf[w] = r.classes.size();
        cls.push_back(w);
      }
    }
    for (auto a : cls) {
      for (auto b : cls) ensure(!trans[a].test(b), "equivalent hyperplanes are transverse");
    }
    r.classes.push_back(std::move(cls));
  }
  return r;
}

template <std::size_t W>
struct DualTree {
  std::vector<std::size_t> hyperplaneClass;
  QuotientMap<W> map;
  const BasicCubeComplex<W>& tree() const { return map.quotient; }
};

/// Restriction quotient onto the ∼-class of w; always a tree.
template <std::size_t W>
DualTree<W> dualTree(const BasicCubeComplex<W>& x, std::size_t w) {
  x.requireHyperplane(w);
  const auto pre = hyperplanePreorder(x);
  DualTree<W> t;
  t.hyperplaneClass = pre.classes[pre.classOf[w]];
  t.map = restrictionQuotient(x, t.hyperplaneClass);
  const SideTable<W> table(t.map.quotient);
  for (std::size_t i = 0; i < t.map.quotient.hyperplaneCount(); ++i) {
    ensure(table.transverseTo(i).none(), "dual tree has a transverse pair");
  }
  return t;
}

/// δ_w(x,y): weight of the ∼-class of w separating x from y.
template <std::size_t W>
Length deltaPseudoMetric(const BasicCubeComplex<W>& x, std::size_t w, const BitVector<W>& a, const BitVector<W>& b) {
  x.requireHyperplane(w);
  x.requireVertex(a);
  x.requireVertex(b);
  const auto pre = hyperplanePreorder(x);
  return x.weights().measure((a ^ b) & pre.classMask(w));
}

}  // namespace cubical
