#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/barycentre.hpp"
#include "cubical/complex.hpp"
#include "cubical/constructions.hpp"
#include "cubical/duality.hpp"
#include "cubical/error.hpp"
#include "cubical/median.hpp"

namespace cubical {

/// Signed permutation of hyperplanes: h_i⁺ ↦ h_{target[i]}^{±}, with the
/// sign reversed where `flips` is set. Used both for automorphisms and for
/// isomorphism witnesses between two complexes.
template <std::size_t W>
class HalfspaceMap {
 public:
  HalfspaceMap() = default;
  HalfspaceMap(std::vector<std::size_t> target, BitVector<W> flips) : target_(std::move(target)), flips_(flips) {}

  static HalfspaceMap identity(std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = i;
    return HalfspaceMap(std::move(t), {});
  }

  /// Entry i is ±(j+1): h_i⁺ ↦ h_j^±. Throws PreconditionFailed unless a signed permutation.
  static HalfspaceMap fromSigned(const std::vector<std::int64_t>& entries) {
    const std::size_t n = entries.size();
    BasicCubeComplex<W>::checkCapacity(n);
    std::vector<std::size_t> t(n);
    std::vector<char> hit(n, 0);
    BitVector<W> flips;
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = entries[i];
      const auto mag = static_cast<std::size_t>(e < 0 ? -e : e);
      if (e == 0 || mag > n || hit[mag - 1]) {
        throw Error(ErrorCode::PreconditionFailed, "halfspace map entry " + std::to_string(i) + " breaks the permutation",
                    {std::to_string(i)}, i);
      }
      hit[mag - 1] = 1;
      t[i] = mag - 1;
      if (e < 0) flips.set(i);
    }
    return HalfspaceMap(std::move(t), flips);
  }

  std::size_t size() const { return target_.size(); }
  std::size_t target(std::size_t i) const { return target_[i]; }
  bool flips(std::size_t i) const { return flips_.test(i); }
  const std::vector<std::size_t>& targets() const { return target_; }
  const BitVector<W>& flipMask() const { return flips_; }

  std::vector<std::int64_t> toSigned() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < target_.size(); ++i) {
      const auto v = static_cast<std::int64_t>(target_[i] + 1);
      out.push_back(flips_.test(i) ? -v : v);
    }
    return out;
  }

  Halfspace apply(Halfspace h) const {
    return {target_[h.hyperplane], flips_.test(h.hyperplane) ? opposite(h.sign) : h.sign};
  }

  BitVector<W> apply(const BitVector<W>& v) const {
    BitVector<W> out;
    for (std::size_t i = 0; i < target_.size(); ++i) {
      if (v.test(i) != flips_.test(i)) out.set(target_[i]);
    }
    return out;
  }

  /// Action on subdivision coordinates; a flip sends the pair (a,b) to (1−b,1−a).
  BitVector<W> applySubdivision(const BitVector<W>& v) const {
    BitVector<W> out;
    for (std::size_t i = 0; i < target_.size(); ++i) {
      bool a = v.test(2 * i);
      bool b = v.test(2 * i + 1);
      if (flips_.test(i)) {
        const bool na = !b;
        b = !a;
        a = na;
      }
      if (a) out.set(2 * target_[i]);
      if (b) out.set(2 * target_[i] + 1);
    }
    return out;
  }

  HalfspaceMap inverse() const {
    std::vector<std::size_t> t(target_.size());
    BitVector<W> f;
    for (std::size_t i = 0; i < target_.size(); ++i) {
      t[target_[i]] = i;
      if (flips_.test(i)) f.set(target_[i]);
    }
    return HalfspaceMap(std::move(t), f);
  }

  /// (this ∘ other)(h) = this(other(h)).
  HalfspaceMap compose(const HalfspaceMap& other) const {
    std::vector<std::size_t> t(other.size());
    BitVector<W> f;
    for (std::size_t i = 0; i < other.size(); ++i) {
      t[i] = target_[other.target_[i]];
      if (other.flips_.test(i) != flips_.test(other.target_[i])) f.set(i);
    }
    return HalfspaceMap(std::move(t), f);
  }

  friend bool operator==(const HalfspaceMap&, const HalfspaceMap&) = default;

 private:
  std::vector<std::size_t> target_;
  BitVector<W> flips_;
};

template <std::size_t W>
using Automorphism = HalfspaceMap<W>;

/// Validates a signed permutation as an automorphism of x.
template <std::size_t W>
Automorphism<W> automorphismFromHalfspaceMap(const BasicCubeComplex<W>& x, const HalfspaceMap<W>& g) {
  const std::size_t n = x.hyperplaneCount();
  if (g.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "halfspace map has " + std::to_string(g.size()) + " entries for " +
                                               std::to_string(n) + " hyperplanes");
  }
  const SideTable<W> table(x);
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      const auto h = Halfspace::fromDense(a);
      const auto k = Halfspace::fromDense(b);
      if (table.subset(h, k) != table.subset(g.apply(h), g.apply(k))) {
        throw Error(ErrorCode::NotOrderPreserving,
                    "inclusion between " + toString(h) + " and " + toString(k) + " is not preserved", {toString(h), toString(k)});
      }
    }
  }
  for (const auto& v : x.vertices()) {
    const auto gv = g.apply(v);
    if (!x.contains(gv)) {
      throw Error(ErrorCode::VertexSetNotPreserved, "image of " + x.format(v) + " is not a vertex", {x.format(v), x.format(gv)});
    }
  }
  return g;
}

template <std::size_t W>
Automorphism<W> automorphismFromHalfspaceMap(const BasicCubeComplex<W>& x, const std::vector<std::int64_t>& entries) {
  if (entries.size() != x.hyperplaneCount()) {
    throw Error(ErrorCode::LengthMismatch, "halfspace map has " + std::to_string(entries.size()) + " entries for " +
                                               std::to_string(x.hyperplaneCount()) + " hyperplanes");
  }
  return automorphismFromHalfspaceMap(x, HalfspaceMap<W>::fromSigned(entries));
}

template <std::size_t W>
struct DisplacementReport {
  Length length = 0;
  BasicCubeComplex<W> subdivision;  // metric-preserving subdivision
  std::vector<std::pair<BitVector<W>, Length>> profile;
};

/// min d(x, gx) over vertices of the metric-preserving first subdivision.
template <std::size_t W>
DisplacementReport<W> displacement(const BasicCubeComplex<W>& x, const WeightFunction& mu, const Automorphism<W>& g) {
  const auto weighted = x.withWeights(mu);
  DisplacementReport<W> r;
  r.subdivision = subdivide(weighted, true);
  bool first = true;
  for (const auto& v : r.subdivision.vertices()) {
    const auto gv = g.applySubdivision(v);
    ensure(r.subdivision.contains(gv), "automorphism does not preserve the subdivision");
    const Length d = r.subdivision.weights().measure(v ^ gv);
    r.profile.emplace_back(v, d);
    if (first || d < r.length) r.length = d;
    first = false;
  }
  return r;
}

template <std::size_t W>
DisplacementReport<W> displacement(const BasicCubeComplex<W>& x, const Automorphism<W>& g) {
  return displacement(x, x.weights(), g);
}

namespace detail {

/// Backtracking search for signed hyperplane correspondences X → Y that
/// preserve every pairwise quadrant pattern, confirmed on vertex sets.
template <std::size_t W>
class IsomorphismSearch {
 public:
  IsomorphismSearch(const BasicCubeComplex<W>& x, const BasicCubeComplex<W>& y) : x_(x), y_(y), n_(x.hyperplaneCount()) {
    px_ = patterns(x);
    py_ = patterns(y);
    sx_ = signatures(x);
    sy_ = signatures(y);
  }

  /// Calls `found` for each correspondence until it returns false.
  void run(const std::function<bool(const HalfspaceMap<W>&)>& found) {
    if (y_.hyperplaneCount() != n_) return;
    candidates_.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        for (int f = 0; f < 2; ++f) {
          if (compatible(i, j, f != 0)) candidates_[i].push_back({j, f != 0});
        }
      }
      if (candidates_[i].empty()) return;
    }
    order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return candidates_[a].size() < candidates_[b].size(); });
    target_.assign(n_, 0);
    flip_.assign(n_, 0);
    used_.assign(n_, 0);
    found_ = &found;
    stop_ = false;
    extend(0);
  }

 private:
  struct Signature {
    std::size_t transverse;
    std::size_t positiveSize;
    std::size_t negativeSize;
    std::size_t carrierSize;
  };

  static std::vector<std::vector<std::uint8_t>> patterns(const BasicCubeComplex<W>& c) {
    const std::size_t n = c.hyperplaneCount();
    const SideTable<W> t(c);
    std::vector<std::vector<std::uint8_t>> p(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        std::uint8_t bits = 0;
        for (int si = 0; si < 2; ++si) {
          for (int sj = 0; sj < 2; ++sj) {
            const Halfspace a{i, si ? Sign::Positive : Sign::Negative};
            const Halfspace b{j, sj ? Sign::Positive : Sign::Negative};
            if (t.meets(a, b)) bits |= static_cast<std::uint8_t>(1U << (si * 2 + sj));
          }
        }
        p[i][j] = bits;
      }
    }
    return p;
  }

  static std::vector<Signature> signatures(const BasicCubeComplex<W>& c) {
    const SideTable<W> t(c);
    std::vector<Signature> s;
    for (std::size_t i = 0; i < c.hyperplaneCount(); ++i) {
      Signature g{t.transverseTo(i).count(), 0, 0, 0};
      for (const auto& v : c.vertices()) {
        (v.test(i) ? g.positiveSize : g.negativeSize) += 1;
        g.carrierSize += c.contains(v.flipped(i));
      }
      s.push_back(g);
    }
    return s;
  }

  static std::uint8_t flipPattern(std::uint8_t bits, bool fi, bool fj) {
    std::uint8_t out = 0;
    for (int si = 0; si < 2; ++si) {
      for (int sj = 0; sj < 2; ++sj) {
        if (bits & (1U << (si * 2 + sj))) out |= static_cast<std::uint8_t>(1U << (((si ^ fi) * 2) + (sj ^ fj)));
      }
    }
    return out;
  }

  bool compatible(std::size_t i, std::size_t j, bool f) const {
    const auto& a = sx_[i];
    const auto& b = sy_[j];
    if (a.transverse != b.transverse || a.carrierSize != b.carrierSize) return false;
    const std::size_t bp = f ? b.negativeSize : b.positiveSize;
    const std::size_t bn = f ? b.positiveSize : b.negativeSize;
    return a.positiveSize == bp && a.negativeSize == bn;
  }

  void extend(std::size_t depth) {
    if (stop_) return;
    if (depth == n_) {
      BitVector<W> flips;
      for (std::size_t i = 0; i < n_; ++i) {
        if (flip_[i]) flips.set(i);
      }
      HalfspaceMap<W> m(target_, flips);
      std::vector<BitVector<W>> image;
      image.reserve(x_.vertexCount());
      for (const auto& v : x_.vertices()) image.push_back(m.apply(v));
      std::sort(image.begin(), image.end());
      if (image == y_.vertices() && !(*found_)(m)) stop_ = true;
      return;
    }
    const std::size_t i = order_[depth];
    for (const auto& [j, f] : candidates_[i]) {
      if (used_[j]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t k = order_[d];
        ok = flipPattern(px_[i][k], f, flip_[k] != 0) == py_[j][target_[k]];
      }
      if (!ok) continue;
      target_[i] = j;
      flip_[i] = f;
      used_[j] = 1;
      extend(depth + 1);
      used_[j] = 0;
      if (stop_) return;
    }
  }

  const BasicCubeComplex<W>& x_;
  const BasicCubeComplex<W>& y_;
  std::size_t n_;
  std::vector<std::vector<std::uint8_t>> px_, py_;
  std::vector<Signature> sx_, sy_;
  std::vector<std::vector<std::pair<std::size_t, bool>>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> target_;
  std::vector<char> flip_;
  std::vector<char> used_;
  const std::function<bool(const HalfspaceMap<W>&)>* found_ = nullptr;
  bool stop_ = false;
};

template <std::size_t W>
std::vector<std::size_t> degreeMultiset(const BasicCubeComplex<W>& x) {
  std::vector<std::size_t> d;
  for (const auto& v : x.vertices()) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.hyperplaneCount(); ++i) k += x.contains(v.flipped(i));
    d.push_back(k);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace detail

template <std::size_t W>
struct IsomorphismResult {
  bool isomorphic = false;
  /// Correspondence from the first complex's halfspaces to the second's.
  std::optional<HalfspaceMap<W>> witness;
  /// Name of the first invariant that differs, when one does.
  std::string mismatch;
};

/// Combinatorial isomorphism test; weights are not compared.
template <std::size_t W>
IsomorphismResult<W> isIsomorphic(const BasicCubeComplex<W>& x, const BasicCubeComplex<W>& y) {
  IsomorphismResult<W> r;
  if (x.hyperplaneCount() != y.hyperplaneCount()) {
    r.mismatch = "hyperplane_count";
    return r;
  }
  if (x.vertexCount() != y.vertexCount()) {
    r.mismatch = "vertex_count";
    return r;
  }
  if (detail::degreeMultiset(x) != detail::degreeMultiset(y)) {
    r.mismatch = "degree_multiset";
    return r;
  }
  if (cubeCounts(x) != cubeCounts(y)) {
    r.mismatch = "cube_counts";
    return r;
  }
  detail::IsomorphismSearch<W> search(x, y);
  search.run([&](const HalfspaceMap<W>& m) {
    r.witness = m;
    return false;
  });
  r.isomorphic = r.witness.has_value();
  if (!r.isomorphic) r.mismatch = "no_correspondence";
  return r;
}

/// Every automorphism of x, in search order; the identity is among them.
template <std::size_t W>
std::vector<Automorphism<W>> automorphisms(const BasicCubeComplex<W>& x, std::size_t limit = 100'000) {
  std::vector<Automorphism<W>> out;
  detail::IsomorphismSearch<W> search(x, x);
  search.run([&](const HalfspaceMap<W>& m) {
    out.push_back(m);
    return out.size() < limit;
  });
  return out;
}

struct EssentialityReport {
  Length depth = 1;
  std::vector<SideDepths> profile;
  /// Hyperplanes with a side shallower than the depth.
  std::vector<std::size_t> failing;
  bool ok() const { return failing.empty(); }
};

template <std::size_t W>
std::vector<SideDepths> essentialDepths(const BasicCubeComplex<W>& x) {
  return hyperplaneDepths(x);
}

template <std::size_t W>
EssentialityReport isREssential(const BasicCubeComplex<W>& x, Length r) {
  EssentialityReport rep;
  rep.depth = r;
  rep.profile = essentialDepths(x);
  for (std::size_t i = 0; i < rep.profile.size(); ++i) {
    if (std::min(rep.profile[i].negative, rep.profile[i].positive) < r) rep.failing.push_back(i);
  }
  return rep;
}

/// A hyperplane as a cube complex: the edges dual to w, coordinatised by
/// the hyperplanes transverse to w (listed in `hyperplanes`).
template <std::size_t W>
struct HyperplaneComplex {
  std::size_t hyperplane = 0;
  std::vector<std::size_t> hyperplanes;
  BasicCubeComplex<W> complex;
};

template <std::size_t W>
HyperplaneComplex<W> hyperplaneComplex(const BasicCubeComplex<W>& x, std::size_t w) {
  x.requireHyperplane(w);
  const SideTable<W> table(x);
  HyperplaneComplex<W> h;
  h.hyperplane = w;
  h.hyperplanes = table.transverseTo(w).indices();
  std::vector<BitVector<W>> vs;
  std::vector<Length> weights;
  for (auto i : h.hyperplanes) weights.push_back(x.weights()[i]);
  for (const auto& v : x.vertices()) {
    if (v.test(w) && x.contains(v.flipped(w))) vs.push_back(restrictBits<W, W>(v, h.hyperplanes));
  }
  h.complex = BasicCubeComplex<W>::fromTrustedVertices(h.hyperplanes.size(), std::move(vs), WeightFunction(std::move(weights)));
  ensure(h.complex.vertexCount() > 0, "hyperplane has no dual edge");
  return h;
}

struct HyperplaneEssentialityReport {
  Length depth = 1;
  /// Hyperplanes of X whose hyperplane complex is not R-essential.
  std::vector<std::size_t> failing;
  /// For each failing hyperplane, the shallow hyperplanes of its complex (as indices of X).
  std::vector<std::vector<std::size_t>> shallow;
  bool ok() const { return failing.empty(); }
};

template <std::size_t W>
HyperplaneEssentialityReport isRHyperplaneEssential(const BasicCubeComplex<W>& x, Length r) {
  HyperplaneEssentialityReport rep;
  rep.depth = r;
  for (std::size_t w = 0; w < x.hyperplaneCount(); ++w) {
    const auto h = hyperplaneComplex(x, w);
    const auto inner = isREssential(h.complex, r);
    if (inner.ok()) continue;
    rep.failing.push_back(w);
    std::vector<std::size_t> shallow;
    for (auto k : inner.failing) shallow.push_back(h.hyperplanes[k]);
    rep.shallow.push_back(std::move(shallow));
  }
  return rep;
}

struct ContractingWitness {
  Halfspace h1;
  Halfspace h2;
};

/// Halfspaces with g·h1 ⊆ h2 ⊆ h1 such that no hyperplane is transverse to
/// both members of (h2, h1*) or of (g·h1, h2*). The test is made at the
/// level of hyperplanes, so h2 = h1 is allowed.
template <std::size_t W>
std::optional<ContractingWitness> stronglyContractingWitness(const BasicCubeComplex<W>& x, const Automorphism<W>& g) {
  const SideTable<W> table(x);
  const std::size_t m = 2 * x.hyperplaneCount();
  for (std::size_t a = 0; a < m; ++a) {
    const auto h1 = Halfspace::fromDense(a);
    const auto gh1 = g.apply(h1);
    for (std::size_t b = 0; b < m; ++b) {
      const auto h2 = Halfspace::fromDense(b);
      if (!table.subset(gh1, h2) || !table.subset(h2, h1)) continue;
      if (noCommonTransverse(table, h2, complement(h1)) && noCommonTransverse(table, gh1, complement(h2))) {
        return ContractingWitness{h1, h2};
      }
    }
  }
  return std::nullopt;
}

}  // namespace cubical
