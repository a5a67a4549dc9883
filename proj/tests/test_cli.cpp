#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cubical;
using cubical::io::Json;
using oracle::bits;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
  Json error() const { return Json::parse(err); }
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cubetool::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return fixtures::path(name); }

std::string tempFile(const std::string& name, const std::string& content = "") {
  const auto p = std::filesystem::temp_directory_path() / ("cubetool_test_" + name);
  if (!content.empty()) std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST(Cli, CrossRatioOnP3) {
  const auto r = cli({"crossratio", "--in", fx("p3"), "000", "111", "100", "110"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["cross_ratio"], 1);
  const auto restricted = cli({"crossratio", "--in", fx("p3"), "--restrict", "1", "000", "111", "100", "110"});
  EXPECT_EQ(restricted.json()["cross_ratio"], 1);
}

TEST(Cli, BarycentreOfThreeSquares) {
  const auto r = cli({"barycentre", "--in", fx("threesquares")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["barycentre"], "11000");
  EXPECT_EQ(j["is_vertex"], true);
  EXPECT_TRUE(j["balanced"].empty());
}

TEST(Cli, IsoOfSubdividedEdgeAndPath) {
  const auto sub = tempFile("p1_sub.json");
  ASSERT_EQ(cli({"subdivide", "--in", fx("p1"), "--out", sub}).code, 0);
  const auto r = cli({"iso", sub, fx("p2")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["isomorphic"], true);
  EXPECT_EQ(r.json()["halfspace_map"].size(), 2u);
  const auto no = cli({"iso", fx("p3"), fx("t3")});
  EXPECT_EQ(no.code, 0);
  EXPECT_EQ(no.json()["isomorphic"], false);
  EXPECT_EQ(no.json()["mismatch"], "degree_multiset");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"validate", "--in", fx("q2")}).code, 0);
  const auto bad = tempFile("bad_complex.json", R"({"format_version":1,"n_hyperplanes":2,"vertices":["00","11"]})");
  const auto v = cli({"validate", "--in", bad});
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(v.json()["valid"], false);

  const auto domain = cli({"median", "--in", bad, "00", "11", "00"});
  EXPECT_EQ(domain.code, 1);
  EXPECT_EQ(domain.error()["error"], "InvalidComplex");

  const auto order = cli({"geodesics", "--in", fx("p3"), "000", "--sequence", "1,0"});
  EXPECT_EQ(order.code, 1);
  EXPECT_EQ(order.error()["error"], "OrderViolated");
  EXPECT_EQ(order.error()["index"], 0);

  const auto mixed = tempFile("mixed.json", R"({"format_version":1,"n_hyperplanes":2,"vertices":["00","1"]})");
  EXPECT_EQ(cli({"validate", "--in", mixed}).code, 2);
  EXPECT_EQ(cli({"median", "--in", fx("p3"), "000", "11", "111"}).code, 2);
  EXPECT_EQ(cli({"nosuchcommand"}).code, 2);
  EXPECT_EQ(cli({"median", "--in", fx("p3")}).code, 2);
  EXPECT_EQ(cli({"barycentre", "--in", "/nonexistent/file.json"}).code, 2);
  const auto inv = tempFile("bad_map.json", R"({"format_version":1,"halfspace_map":[1,1,2]})");
  const auto m = cli({"displacement", "--in", fx("p3"), "--map", inv});
  EXPECT_EQ(m.code, 2);
  EXPECT_EQ(m.error()["error"], "InvariantViolation");
  EXPECT_TRUE(m.out.empty());
}

TEST(Cli, DualDocuments) {
  const auto w = cli({"dual", "--in", fx("square_wallspace")});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(w.json()["vertices"].size(), 4u);
  const auto p = cli({"dual", "--pocset", "--in", fx("chain_pocset")});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(p.json()["vertices"], Json::array({"00", "10", "11"}));
}

TEST(Cli, ThinAdapters) {
  const auto x = fixtures::load("threesquares");
  const auto p = fx("threesquares");

  EXPECT_EQ(cli({"median", "--in", p, "11100", "11010", "11011"}).json()["median"],
            x.format(median(x, bits("11100"), bits("11010"), bits("11011"))));
  EXPECT_EQ(cli({"interval", "--in", p, "00000", "11111"}).json()["distance"], distance(x, bits("00000"), bits("11111")));
  EXPECT_EQ(cli({"geodesics", "--in", p, "00000", "11111"}).json()["count"],
            enumerateGeodesics(x, bits("00000"), bits("11111")).size());
  EXPECT_EQ(cli({"factors", "--in", p}).json()["factors"].size(), irreducibleFactors(x).size());
  EXPECT_EQ(Json::parse(cli({"subdivide", "--in", p}).out), io::complexJson(subdivide(x)));
  EXPECT_EQ(Json::parse(cli({"squarise", "--in", fx("p3")}).out), io::complexJson(squarise(fixtures::load("p3"))));
  EXPECT_EQ(Json::parse(cli({"hedgehog", "--in", fx("p3"), "000", "111"}).out),
            io::complexJson(hedgehog(fixtures::load("p3"), oracle::bitsList({"000", "111"}))));
  const auto pocset = cli({"pocset", "--in", p}).json();
  EXPECT_EQ(pocset["relations"].size(), pocsetOfComplex(x).size());

  const auto gate = cli({"gate", "--in", fx("q2"), "00", "--halfspaces", "0+,1+"}).json();
  EXPECT_EQ(gate["gate"], "11");
  EXPECT_EQ(gate["separating"], Json::array({0, 1}));
  EXPECT_EQ(cli({"gate", "--in", fx("q2"), "00", "--hull", "11,10"}).json()["gate"], "10");

  const auto br = cli({"bridge", "--in", fx("p3"), "0-", "2+"}).json();
  EXPECT_EQ(br["gap"], 3);
  EXPECT_EQ(br["strongly_separated"], true);

  const auto lean = cli({"lean", "--in", fx("q2"), "00", "10", "11"}).json();
  EXPECT_EQ(lean["leanness"], 1);

  const auto ess = cli({"check-essential", "--in", fx("p3"), "--depth", "1"}).json();
  EXPECT_EQ(ess["essential"], false);
  EXPECT_EQ(ess["failing"], Json::array({0, 2}));

  const auto disp = cli({"displacement", "--in", fx("p3"), "--map", fx("p3_reversal")}).json();
  EXPECT_EQ(disp["displacement"], 0);

  const auto q = cli({"quotient", "--in", fx("cube3"), "--hyperplanes", "0,2"}).json();
  EXPECT_EQ(q["vertices"].size(), 4u);

  const auto dt = cli({"dualtree", "--in", fx("p3"), "1"}).json();
  EXPECT_EQ(dt["hyperplane"], 1);
}

TEST(Cli, WeightsOverride) {
  const auto r = cli({"interval", "--in", fx("p3"), "--weights", "1,2,0.5", "000", "111"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["distance"], 3.5);
  const auto w = cli({"interval", "--in", fx("p3_weighted"), "000", "111"});
  EXPECT_EQ(w.json()["distance"], 3.5);
}

TEST(Cli, OutputIsStableAndMatchesGoldenFile) {
  const auto a = cli({"subdivide", "--in", fx("p1")});
  const auto b = cli({"subdivide", "--in", fx("p1")});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, io::readFile(fx("p1_subdivided")));
  const auto file = tempFile("stable.json");
  ASSERT_EQ(cli({"barycentre", "--in", fx("q2"), "--out", file}).code, 0);
  EXPECT_EQ(io::readFile(file), cli({"barycentre", "--in", fx("q2")}).out);
}
