#include <gtest/gtest.h>

#include <cmath>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/relabel_map.hpp"

using namespace cubical;
using oracle::bits;
using oracle::make;
using V = oracle::V;
using Map = HalfspaceMap<kNarrowWords>;

namespace {

const CubeComplex kP1 = make(1, {"0", "1"});
const CubeComplex kP3 = make(3, {"000", "100", "110", "111"});
const CubeComplex kQ2 = make(2, {"00", "01", "10", "11"});

void expectError(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(HalfspaceMap, Examples) {
  const auto id = automorphismFromHalfspaceMap(kP3, std::vector<std::int64_t>{1, 2, 3});
  EXPECT_EQ(id, Map::identity(3));
  for (const auto& v : kP3.vertices()) EXPECT_EQ(id.apply(v), v);

  const auto rev = automorphismFromHalfspaceMap(kP3, std::vector<std::int64_t>{-3, -2, -1});
  EXPECT_EQ(rev.apply(bits("000")), bits("111"));
  EXPECT_EQ(rev.apply(bits("100")), bits("110"));
  EXPECT_EQ(rev.compose(rev), Map::identity(3));

  const auto swap = automorphismFromHalfspaceMap(kQ2, std::vector<std::int64_t>{2, 1});
  EXPECT_EQ(swap.apply(bits("10")), bits("01"));
  EXPECT_EQ(swap.apply(bits("00")), bits("00"));
  EXPECT_EQ(swap.apply(bits("11")), bits("11"));
}

TEST(HalfspaceMap, Errors) {
  expectError(ErrorCode::NotOrderPreserving, [] { automorphismFromHalfspaceMap(kP3, std::vector<std::int64_t>{2, 1, 3}); });
  expectError(ErrorCode::LengthMismatch, [] { automorphismFromHalfspaceMap(kP3, std::vector<std::int64_t>{1, 2}); });
  expectError(ErrorCode::PreconditionFailed, [] { Map::fromSigned({1, 1}); });
  expectError(ErrorCode::PreconditionFailed, [] { Map::fromSigned({0, 2}); });
}

TEST(HalfspaceMap, AlgebraMatchesVertexAction) {
  gen::Rng rng(81);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = gen::uniform(rng, 1, 10);
    const auto f = gen::asHalfspaceMap(gen::randomRelabelling(rng, n));
    const auto g = gen::asHalfspaceMap(gen::randomRelabelling(rng, n));
    EXPECT_EQ(Map::fromSigned(f.toSigned()), f);
    EXPECT_EQ(f.inverse().compose(f), Map::identity(n));
    V v;
    for (std::size_t i = 0; i < n; ++i) v.set(i, gen::uniform(rng, 0, 1) == 1);
    EXPECT_EQ(f.compose(g).apply(v), f.apply(g.apply(v)));
    EXPECT_EQ(f.applySubdivision(subdivisionVertex(v, n)), subdivisionVertex(f.apply(v), n));
  }
}

TEST(Displacement, Examples) {
  EXPECT_EQ(displacement(kP3, Map::identity(3)).length, 0);
  const auto rev = displacement(kP3, automorphismFromHalfspaceMap(kP3, std::vector<std::int64_t>{-3, -2, -1}));
  EXPECT_EQ(rev.length, 0);
  EXPECT_EQ(rev.profile.size(), subdivide(kP3).vertexCount());
  const auto turn = displacement(kQ2, automorphismFromHalfspaceMap(kQ2, std::vector<std::int64_t>{-1, -2}));
  EXPECT_EQ(turn.length, 0);
  Length worst = 0;
  for (const auto& [v, d] : turn.profile) worst = std::max(worst, d);
  EXPECT_EQ(worst, 2);
}

TEST(Automorphisms, CountsMatchSignedPermutationSearch) {
  EXPECT_EQ(automorphisms(fixtures::load("cube3")).size(), 48u);
  EXPECT_EQ(automorphisms(kP3).size(), 2u);
  EXPECT_EQ(automorphisms(fixtures::load("star4")).size(), 24u);
  gen::Rng rng(82);
  for (int trial = 0; trial < 25; ++trial) {
    const auto x = gen::randomComplex(rng, 6, 60);
    EXPECT_EQ(automorphisms(x).size(), oracle::countAutomorphisms(x));
  }
}

TEST(Automorphisms, FixBarycentreWithZeroIntegerDisplacement) {
  gen::Rng rng(83);
  std::vector<CubeComplex> xs;
  for (const auto& name : fixtures::complexNames()) xs.push_back(fixtures::load(name));
  for (int trial = 0; trial < 15; ++trial) xs.push_back(gen::randomComplex(rng, 8, 60));
  for (const auto& x : xs) {
    // Automorphisms are combinatorial; with weights only the weight-preserving ones are isometries.
    const auto unit = WeightFunction::unit(x.hyperplaneCount());
    const auto centre = medianBarycentre(x.withWeights(unit)).centre;
    const auto weightedCentre = medianBarycentre(x).centre;
    for (const auto& g : automorphisms(x, 200)) {
      EXPECT_EQ(g.applySubdivision(centre), centre);
      const auto d = displacement(x, unit, g);
      EXPECT_EQ(d.length, 0);
      for (const auto& [v, len] : d.profile) EXPECT_EQ(len, std::round(len));
      bool isometry = true;
      for (std::size_t i = 0; i < x.hyperplaneCount(); ++i) isometry &= x.weights()[g.target(i)] == x.weights()[i];
      if (!isometry) continue;
      EXPECT_EQ(g.applySubdivision(weightedCentre), weightedCentre);
      EXPECT_EQ(displacement(x, g).length, 0);
    }
  }
}

TEST(Isomorphism, Examples) {
  const auto self = isIsomorphic(kP3, kP3);
  ASSERT_TRUE(self.isomorphic);
  EXPECT_TRUE(self.witness.has_value());

  EXPECT_TRUE(isIsomorphic(subdivide(kP1), make(2, {"00", "10", "11"})).isomorphic);
  const auto diff = isIsomorphic(squarise(kP1), subdivide(kP1));
  EXPECT_FALSE(diff.isomorphic);
  EXPECT_EQ(diff.mismatch, "vertex_count");
  EXPECT_EQ(isIsomorphic(fixtures::load("p3"), fixtures::load("t3")).mismatch, "degree_multiset");
}

TEST(Isomorphism, RelabellingInvariantWithValidWitnesses) {
  gen::Rng rng(84);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = gen::randomComplex(rng, 10, 80);
    const auto y = gen::relabel(rng, x);
    const auto xy = isIsomorphic(x, y);
    const auto yx = isIsomorphic(y, x);
    ASSERT_TRUE(xy.isomorphic);
    ASSERT_TRUE(yx.isomorphic);
    const auto& m = *xy.witness;
    for (const auto& v : x.vertices()) EXPECT_TRUE(y.contains(m.apply(v)));
    for (const auto& v : y.vertices()) EXPECT_TRUE(x.contains(m.inverse().apply(v)));
    EXPECT_EQ(m.applySubdivision(medianBarycentre(x).centre), medianBarycentre(y).centre);

    const auto vs = gen::sampleVertices(rng, x, 4);
    if (vs.size() == 4) {
      EXPECT_DOUBLE_EQ(crossRatio(x, vs[0], vs[1], vs[2], vs[3]),
                       crossRatio(y, m.apply(vs[0]), m.apply(vs[1]), m.apply(vs[2]), m.apply(vs[3])));
    }
  }
}

TEST(Isomorphism, DistinguishesNonIsomorphicTrees) {
  const auto path = make(3, {"000", "100", "110", "111"});
  const auto star = fixtures::load("t3");
  EXPECT_FALSE(isIsomorphic(path, star).isomorphic);
  EXPECT_FALSE(isIsomorphic(fixtures::load("threesquares"), fixtures::load("ladder")).isomorphic);
}

TEST(Essential, Examples) {
  const auto p = isREssential(kP3, 1);
  EXPECT_EQ(p.profile[1].negative, 1);
  EXPECT_EQ(p.profile[1].positive, 1);
  EXPECT_EQ(p.profile[0].negative, 0);
  EXPECT_EQ(p.profile[0].positive, 2);
  EXPECT_EQ(p.failing, (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(isREssential(kP3, 0).ok());
  EXPECT_TRUE(isREssential(kQ2, 0).ok());
  EXPECT_FALSE(isREssential(kQ2, 1).ok());
}

TEST(HyperplaneComplex, Examples) {
  const auto q = hyperplaneComplex(kQ2, 0);
  EXPECT_EQ(q.hyperplanes, (std::vector<std::size_t>{1}));
  EXPECT_EQ(q.complex.vertexCount(), 2u);

  const auto p = hyperplaneComplex(kP3, 1);
  EXPECT_TRUE(p.hyperplanes.empty());
  EXPECT_EQ(p.complex.vertexCount(), 1u);

  const auto cube = fixtures::load("cube3");
  for (std::size_t w = 0; w < 3; ++w) {
    const auto h = hyperplaneComplex(cube, w);
    EXPECT_TRUE(isIsomorphic(h.complex, kQ2).isomorphic);
  }
}

TEST(HyperplaneComplex, ValidAndIndexedByTransverseHyperplanes) {
  gen::Rng rng(85);
  for (int trial = 0; trial < 25; ++trial) {
    const auto x = gen::randomComplex(rng, 10, 80);
    for (std::size_t w = 0; w < x.hyperplaneCount(); ++w) {
      const auto h = hyperplaneComplex(x, w);
      std::vector<std::size_t> expected;
      for (std::size_t i = 0; i < x.hyperplaneCount(); ++i) {
        if (i != w && oracle::transverse(x, w, i)) expected.push_back(i);
      }
      EXPECT_EQ(h.hyperplanes, expected);
      EXPECT_TRUE(validateComplex(h.complex.hyperplaneCount(), h.complex.vertices()).ok());
    }
  }
}

TEST(StronglyContracting, Examples) {
  const auto p = stronglyContractingWitness(kP3, Map::identity(3));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->h1.hyperplane, p->h2.hyperplane);
  EXPECT_FALSE(stronglyContractingWitness(kQ2, Map::identity(2)).has_value());
  const auto cube = fixtures::load("cube3");
  for (const auto& g : automorphisms(cube)) EXPECT_FALSE(stronglyContractingWitness(cube, g).has_value());
}
