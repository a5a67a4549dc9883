#include <gtest/gtest.h>

#include <algorithm>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cubical;
using oracle::bits;
using oracle::make;

namespace {

const CubeComplex kP1 = make(1, {"0", "1"});
const CubeComplex kP2 = make(2, {"00", "10", "11"});
const CubeComplex kP3 = make(3, {"000", "100", "110", "111"});
const CubeComplex kQ2 = make(2, {"00", "01", "10", "11"});
const CubeComplex kT3 = make(3, {"000", "100", "010", "001"});

bool iso(const CubeComplex& a, const CubeComplex& b) { return isIsomorphic(a, b).isomorphic; }

bool contains(const std::vector<Inclusion>& r, Halfspace a, Halfspace b) {
  return std::find(r.begin(), r.end(), Inclusion{a, b}) != r.end();
}

/// Factors matched as a multiset up to isomorphism.
bool sameFactors(std::vector<CubeComplex> a, std::vector<CubeComplex> b) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& f : a) {
    bool hit = false;
    for (std::size_t j = 0; j < b.size() && !hit; ++j) {
      if (!used[j] && iso(f, b[j])) used[j] = hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

std::vector<CubeComplex> factorComplexes(const CubeComplex& x) {
  std::vector<CubeComplex> out;
  for (const auto& f : irreducibleFactors(x)) out.push_back(f.complex);
  return out;
}

}  // namespace

TEST(Wallspace, Examples) {
  WallSpace one{2, {{0}}, 1};
  EXPECT_TRUE(iso(complexFromWallspace<1>(one).complex, kP1));

  WallSpace nested{3, {{0}, {1}}, 2};
  const auto d = complexFromWallspace<1>(nested);
  EXPECT_EQ(d.complex.vertexCount(), 3u);
  EXPECT_EQ(d.complex.hyperplaneCount(), 2u);
  EXPECT_TRUE(iso(d.complex, kP2));
  EXPECT_EQ(d.basePoint, 2u);

  WallSpace crossing{4, {{0, 1}, {1, 2}}, 0};
  EXPECT_EQ(complexFromWallspace<1>(crossing).complex.vertices(), kQ2.vertices());
}

TEST(Wallspace, PrincipalOrientationsRecordMembership) {
  WallSpace ws{4, {{0, 1}, {1, 2}}, 0};
  const auto d = complexFromWallspace<1>(ws);
  ASSERT_EQ(d.principal.size(), 4u);
  EXPECT_EQ(d.principal[0], bits("10"));
  EXPECT_EQ(d.principal[1], bits("11"));
  EXPECT_EQ(d.principal[2], bits("01"));
  EXPECT_EQ(d.principal[3], bits("00"));
  EXPECT_TRUE(d.allPointsInComponent);
}

TEST(Wallspace, InvalidWalls) {
  auto code = [](const WallSpace& ws) {
    try {
      complexFromWallspace<1>(ws);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InternalInvariant;
  };
  EXPECT_EQ(code({3, {{}}, 0}), ErrorCode::InvalidWall);
  EXPECT_EQ(code({3, {{0, 1, 2}}, 0}), ErrorCode::InvalidWall);
  EXPECT_EQ(code({3, {{0}, {1, 2}}, 0}), ErrorCode::InvalidWall);
  EXPECT_EQ(code({3, {{0}}, 5}), ErrorCode::InvalidWall);
}

TEST(Wallspace, OutputAlwaysValidates) {
  gen::Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = gen::randomWallspaceComplex(rng, 10);
    EXPECT_TRUE(validateComplex<1>(x.hyperplaneCount(), x.vertices()).ok());
  }
}

TEST(Pocset, ComplexFromPocsetExamples) {
  EXPECT_EQ(complexFromPocset<1>({{positive(1), positive(0)}}, 2).vertices(), kP2.vertices());
  EXPECT_EQ(complexFromPocset<1>({}, 2).vertices(), kQ2.vertices());
  const std::vector<Inclusion> disjoint{{positive(0), negative(1)}, {positive(0), negative(2)}, {positive(1), negative(2)}};
  EXPECT_EQ(complexFromPocset<1>(disjoint, 3).vertices(), kT3.vertices());
}

TEST(Pocset, Inconsistent) {
  auto code = [](std::vector<Inclusion> r, std::size_t n) {
    try {
      complexFromPocset<1>(r, n);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InternalInvariant;
  };
  EXPECT_EQ(code({{positive(0), negative(0)}}, 1), ErrorCode::InconsistentPocset);
  EXPECT_EQ(code({{positive(0), positive(1)}, {positive(1), positive(2)}, {positive(2), negative(0)}}, 3),
            ErrorCode::InconsistentPocset);
  EXPECT_EQ(code({{positive(0), positive(1)}, {positive(1), positive(0)}}, 2), ErrorCode::InconsistentPocset);
  EXPECT_EQ(code({{positive(0), positive(4)}}, 2), ErrorCode::PreconditionFailed);
}

TEST(Pocset, OfComplexExamples) {
  const auto p3 = pocsetOfComplex(kP3);
  EXPECT_TRUE(contains(p3, positive(1), positive(0)));
  EXPECT_TRUE(contains(p3, positive(2), positive(1)));
  EXPECT_TRUE(contains(p3, negative(0), negative(1)));
  EXPECT_TRUE(contains(p3, negative(1), negative(2)));
  EXPECT_FALSE(contains(p3, positive(2), positive(0)));
  EXPECT_EQ(p3.size(), 4u);

  EXPECT_TRUE(pocsetOfComplex(kQ2).empty());

  const auto t3 = pocsetOfComplex(kT3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) {
        EXPECT_TRUE(contains(t3, positive(i), negative(j)));
      }
}

TEST(Pocset, RelationsAreTrueInclusions) {
  gen::Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = gen::randomComplex(rng, 10);
    for (const auto& r : pocsetOfComplex(x)) {
      for (const auto& v : oracle::verticesInHalfspace(x, r.sub)) EXPECT_TRUE(r.sup.contains(v));
    }
  }
}

TEST(Pocset, RoundTripIsIsomorphic) {
  gen::Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = gen::randomComplex(rng, 12);
    const auto y = complexFromPocset<1>(pocsetOfComplex(x), x.hyperplaneCount());
    const auto r = isIsomorphic(x, y);
    ASSERT_TRUE(r.isomorphic) << r.mismatch;
    // The greedy seed gives the same labelling, so the vertex sets agree outright.
    EXPECT_EQ(y.vertices(), x.vertices());
  }
}

TEST(Cubes, Examples) {
  EXPECT_EQ(cubes(kQ2, 2).size(), 1u);
  EXPECT_EQ(cubes(kP3, 1).size(), 3u);
  EXPECT_EQ(cubes(fixtures::load("cube3"), 2).size(), 6u);
  EXPECT_EQ(cubeCounts(fixtures::load("cube3")), (std::vector<std::size_t>{8, 12, 6, 1}));
}

TEST(Cubes, MatchBruteForce) {
  gen::Rng rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = gen::randomComplex(rng, 9);
    const auto counts = cubeCounts(x);
    for (std::size_t k = 0; k < counts.size(); ++k) EXPECT_EQ(counts[k], oracle::countCubes(x, k)) << "k=" << k;
    for (const auto& c : cubes(x, 2)) EXPECT_TRUE((c.base & c.spanned).none());
  }
}

TEST(Product, Examples) {
  EXPECT_EQ(product(kP1, kP1).vertices(), kQ2.vertices());
  const auto ladder = product(kP3, kP1);
  EXPECT_EQ(ladder.vertexCount(), 8u);
  EXPECT_EQ(ladder.vertices(), fixtures::load("ladder").vertices());
  const CubeComplex point;
  EXPECT_EQ(product(kP3, point).vertices(), kP3.vertices());
  EXPECT_EQ(product(point, kP3).vertices(), kP3.vertices());
}

TEST(Product, VertexCountMultiplies) {
  gen::Rng rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = gen::randomComplex(rng, 5, 30);
    const auto y = gen::randomComplex(rng, 5, 30);
    const auto p = product(x, y);
    EXPECT_EQ(p.vertexCount(), x.vertexCount() * y.vertexCount());
    EXPECT_TRUE(validateComplex<1>(p.hyperplaneCount(), p.vertices()).ok());
  }
}

TEST(Factors, Examples) {
  const auto q2 = irreducibleFactors(kQ2);
  ASSERT_EQ(q2.size(), 2u);
  EXPECT_TRUE(iso(q2[0].complex, kP1));
  EXPECT_TRUE(iso(q2[1].complex, kP1));
  const auto p3 = irreducibleFactors(kP3);
  ASSERT_EQ(p3.size(), 1u);
  EXPECT_EQ(p3[0].hyperplanes, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(sameFactors(factorComplexes(product(kP3, kP3)), {kP3, kP3}));
  EXPECT_TRUE(irreducibleFactors(CubeComplex{}).empty());
}

TEST(Factors, ProductFactorsAreTheUnion) {
  gen::Rng rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = gen::randomComplex(rng, 5, 30);
    const auto y = gen::randomComplex(rng, 5, 30);
    auto expected = factorComplexes(x);
    for (auto& f : factorComplexes(y)) expected.push_back(f);
    EXPECT_TRUE(sameFactors(factorComplexes(product(x, y)), expected));
  }
}

TEST(Factors, ProductOfFactorsRebuildsTheComplex) {
  gen::Rng rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = gen::randomComplex(rng, 8, 60);
    CubeComplex acc;
    for (const auto& f : irreducibleFactors(x)) acc = product(acc, f.complex);
    EXPECT_TRUE(iso(acc, x));
  }
}
