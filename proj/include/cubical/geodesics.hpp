#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubical/barycentre.hpp"
#include "cubical/complex.hpp"
#include "cubical/error.hpp"
#include "cubical/median.hpp"
#include "cubical/pocset.hpp"

namespace cubical {

template <std::size_t W>
struct Geodesic {
  std::vector<BitVector<W>> path;
  std::vector<std::size_t> sequence;  // hyperplane crossed by each edge, in order

  std::size_t length() const { return sequence.size(); }
  BitVector<W> crossed() const { return BitVector<W>::fromIndices(sequence); }
  friend bool operator==(const Geodesic&, const Geodesic&) = default;
};

inline std::string formatHyperplaneSet(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

/// Hyperplane sequence of a path; throws NotAPath unless consecutive vertices are adjacent vertices.
template <std::size_t W>
std::vector<std::size_t> crossingSequence(const BasicCubeComplex<W>& x, const std::vector<BitVector<W>>& path) {
  if (path.empty()) throw Error(ErrorCode::NotAPath, "path is empty");
  for (const auto& v : path) x.requireVertex(v);
  std::vector<std::size_t> seq;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto d = path[k] ^ path[k + 1];
    if (d.count() != 1) {
      throw Error(ErrorCode::NotAPath, "vertices " + x.format(path[k]) + " and " + x.format(path[k + 1]) + " are not adjacent",
                  {x.format(path[k]), x.format(path[k + 1])}, k);
    }
    seq.push_back(*d.first());
  }
  return seq;
}

/// A path is geodesic iff it crosses pairwise distinct hyperplanes.
template <std::size_t W>
bool isGeodesic(const BasicCubeComplex<W>& x, const std::vector<BitVector<W>>& path) {
  auto seq = crossingSequence(x, path);
  std::sort(seq.begin(), seq.end());
  return std::adjacent_find(seq.begin(), seq.end()) == seq.end();
}

/// Hyperplanes separating p from hyperplane w (i.e. from its carrier).
template <std::size_t W>
BitVector<W> separatingFromHyperplane(const BasicCubeComplex<W>& x, const BitVector<W>& p, std::size_t w) {
  return separatingFromSet(carrier(x, w), p);
}

/// Builds the geodesic from p crossing `seq` in order, checking at step n
/// that 𝒲(p|w_n) = {w_0..w_{n-1}} minus the hyperplanes transverse to w_n.
template <std::size_t W>
Geodesic<W> geodesicFromSequence(const BasicCubeComplex<W>& x, const BitVector<W>& p, const std::vector<std::size_t>& seq) {
  x.requireVertex(p);
  for (auto i : seq) x.requireHyperplane(i);
  {
    auto sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::PreconditionFailed, "hyperplane sequence repeats a hyperplane");
    }
  }
  const SideTable<W> table(x);
  Geodesic<W> g;
  g.path.push_back(p);
  BitVector<W> before;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const std::size_t w = seq[n];
    const auto actual = separatingFromHyperplane(x, p, w);
    const auto expected = before & ~table.transverseTo(w);
    if (actual != expected) {
      throw Error(ErrorCode::OrderViolated,
                  "condition fails at index " + std::to_string(n) + ": W(p|" + std::to_string(w) +
                      ")=" + formatHyperplaneSet(actual.indices()) + " but expected " + formatHyperplaneSet(expected.indices()),
                  {formatHyperplaneSet(actual.indices()), formatHyperplaneSet(expected.indices())}, n);
    }
    const auto next = g.path.back().flipped(w);
    ensure(x.contains(next), "sequence condition held but the flip left the complex");
    g.path.push_back(next);
    g.sequence.push_back(w);
    before.set(w);
  }
  return g;
}

/// All geodesics from u to v, in lexicographic order of hyperplane sequences.
template <std::size_t W>
std::vector<Geodesic<W>> enumerateGeodesics(const BasicCubeComplex<W>& x, const BitVector<W>& u, const BitVector<W>& v,
                                            std::size_t limit = 1'000'000) {
  x.requireVertex(u);
  x.requireVertex(v);
  std::vector<Geodesic<W>> out;
  Geodesic<W> cur;
  cur.path.push_back(u);
  auto walk = [&](auto&& self) -> void {
    if (out.size() >= limit) return;
    const auto here = cur.path.back();
    if (here == v) {
      out.push_back(cur);
      return;
    }
    (here ^ v).forEach([&](std::size_t i) {
      const auto next = here.flipped(i);
      if (!x.contains(next)) return;
      cur.path.push_back(next);
      cur.sequence.push_back(i);
      self(self);
      cur.path.pop_back();
      cur.sequence.pop_back();
    });
  };
  walk(walk);
  if (out.size() >= limit) throw Error(ErrorCode::CapacityExceeded, "geodesic count exceeds the enumeration limit");
  return out;
}

namespace detail {

/// Largest facing-triple-free subset of `pool`.
template <std::size_t W>
class FacingFreeSolver {
 public:
  explicit FacingFreeSolver(const FacingTable<W>& facing) : facing_(facing) {}

  std::size_t maxSubset(const BitVector<W>& pool) {
    if (auto it = memo_.find(pool); it != memo_.end()) return it->second;
    const auto items = pool.indices();
    std::size_t best = 0;
    BitVector<W> chosen;
    search(items, 0, chosen, 0, best);
    memo_.emplace(pool, best);
    return best;
  }

 private:
  void search(const std::vector<std::size_t>& items, std::size_t k, BitVector<W>& chosen, std::size_t size,
              std::size_t& best) {
    best = std::max(best, size);
    if (k == items.size() || size + (items.size() - k) <= best) return;
    const std::size_t e = items[k];
    bool ok = true;
    chosen.forEach([&](std::size_t a) {
      if (ok && (facing_.completions(a, e) & chosen).any()) ok = false;
    });
    if (ok) {
      chosen.set(e);
      search(items, k + 1, chosen, size + 1, best);
      chosen.reset(e);
    }
    search(items, k + 1, chosen, size, best);
  }

  const FacingTable<W>& facing_;
  std::unordered_map<BitVector<W>, std::size_t> memo_;
};

}  // namespace detail

/// Least C for which the geodesic is C-lean: the maximum of min(#U, #V)
/// over transverse U ⊆ 𝒲(γ), V ⊆ 𝒲(X) with U ⊔ V free of facing triples.
/// A triple meeting both U and V is never facing (two of its members are
/// transverse), so U and V only need to be facing-free separately.
template <std::size_t W>
std::size_t leannessConstant(const BasicCubeComplex<W>& x, const std::vector<BitVector<W>>& path) {
  if (!isGeodesic(x, path)) throw Error(ErrorCode::PreconditionFailed, "path is not a geodesic");
  const auto seq = crossingSequence(x, path);
  const SideTable<W> table(x);
  const FacingTable<W> facing(x);
  detail::FacingFreeSolver<W> solver(facing);
  std::vector<BitVector<W>> trans(x.hyperplaneCount());
  for (std::size_t i = 0; i < trans.size(); ++i) trans[i] = table.transverseTo(i);
  std::vector<std::size_t> items = seq;
  std::sort(items.begin(), items.end());

  std::size_t best = 0;
  BitVector<W> chosen;
  auto search = [&](auto&& self, std::size_t k, std::size_t size, const BitVector<W>& common) -> void {
    if (size > best) best = std::max(best, std::min(size, solver.maxSubset(common)));
    // Adding more of U can only shrink the common transverse set.
    const std::size_t bound = std::min(size + (items.size() - k), common.count());
    if (k == items.size() || bound <= best) return;
    const std::size_t e = items[k];
    const auto nextCommon = common & trans[e];
    bool ok = nextCommon.any();
    chosen.forEach([&](std::size_t a) {
      if (ok && (facing.completions(a, e) & chosen).any()) ok = false;
    });
    if (ok) {
      chosen.set(e);
      self(self, k + 1, size + 1, nextCommon);
      chosen.reset(e);
    }
    self(self, k + 1, size, common);
  };
  search(search, 0, 0, x.allHyperplanes());
  return best;
}

}  // namespace cubical
