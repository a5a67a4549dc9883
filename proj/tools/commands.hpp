#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubical/cubical.hpp"
#include "cubical/io.hpp"

namespace cubetool {

using cubical::BitVector;
using cubical::Error;
using cubical::ErrorCode;
using cubical::io::Json;

struct Options {
  std::string in;
  std::string out;
  std::vector<double> weights;
  std::vector<std::string> args;
  std::vector<std::size_t> indices;
  std::vector<std::size_t> restrict;
  std::vector<std::string> halfspaces;
  std::vector<std::string> hull;
  std::string map;
  double depth = 1;
  bool pocset = false;
  bool preserveMetric = false;
  bool extended = false;
  bool hasSequence = false;
  std::size_t limit = 100000;
};

namespace detail {

[[noreturn]] inline void usage(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <std::size_t W>
BitVector<W> vertexArg(const cubical::BasicCubeComplex<W>& x, const std::string& s) {
  auto v = BitVector<W>::fromString(s);
  if (!v || s.size() != x.hyperplaneCount()) {
    usage("vertex argument '" + s + "' is not a bit-string of length " + std::to_string(x.hyperplaneCount()));
  }
  return *v;
}

inline cubical::Halfspace halfspaceArg(const std::string& s) {
  auto h = cubical::parseHalfspace(s);
  if (!h) usage("halfspace argument '" + s + "' is not of the form 3+ or 3-");
  return *h;
}

template <std::size_t W>
std::vector<BitVector<W>> vertexArgs(const cubical::BasicCubeComplex<W>& x, const std::vector<std::string>& args) {
  std::vector<BitVector<W>> out;
  for (const auto& s : args) out.push_back(vertexArg(x, s));
  return out;
}

inline void requireArgs(const std::vector<std::string>& args, std::size_t n, const std::string& what) {
  if (args.size() != n) usage("expected " + std::to_string(n) + " " + what + ", got " + std::to_string(args.size()));
}

template <std::size_t W>
Json strings(const cubical::BasicCubeComplex<W>& x, const std::vector<BitVector<W>>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(x.format(v));
  return a;
}

template <std::size_t W>
Json indexList(const BitVector<W>& s) {
  return s.indices();
}

inline Json errorJson(const Error& e) {
  Json j;
  j["error"] = std::string(cubical::errorCodeName(e.code()));
  j["message"] = e.what();
  j["witness"] = e.witness();
  if (e.index()) j["index"] = *e.index();
  return j;
}

/// Hyperplane count the command's output needs, given the input's.
inline std::size_t capacityNeeded(const std::string& cmd, std::size_t n, const Options& o) {
  if (cmd == "subdivide" || cmd == "squarise" || cmd == "barycentre" || cmd == "displacement") return 2 * n;
  if (cmd == "hedgehog") return n + o.args.size();
  return n;
}

template <std::size_t W>
cubical::BasicCubeComplex<W> loadComplex(const cubical::io::ComplexDocument& doc, const Options& o) {
  auto x = cubical::io::toComplex<W>(doc);
  if (!o.weights.empty()) x = x.withWeights(cubical::WeightFunction(o.weights));
  return x;
}

template <std::size_t W>
Json withComplex(const cubical::BasicCubeComplex<W>& x, Json extra = Json::object()) {
  Json j = cubical::io::complexJson(x);
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

template <std::size_t W>
Json runOnComplex(const std::string& cmd, const cubical::io::ComplexDocument& doc, const Options& o, int& status) {
  using namespace cubical;
  const auto x = loadComplex<W>(doc, o);
  const std::size_t n = x.hyperplaneCount();
  Json j;

  if (cmd == "pocset") {
    io::PocsetDocument p{n, pocsetOfComplex(x)};
    return io::toJson(p);
  }
  if (cmd == "median") {
    requireArgs(o.args, 3, "vertices");
    const auto v = vertexArgs(x, o.args);
    j["median"] = x.format(median(x, v[0], v[1], v[2]));
    return j;
  }
  if (cmd == "interval") {
    requireArgs(o.args, 2, "vertices");
    const auto v = vertexArgs(x, o.args);
    j["distance"] = io::lengthJson(distance(x, v[0], v[1]));
    j["interval"] = strings(x, interval(x, v[0], v[1]));
    return j;
  }
  if (cmd == "gate") {
    requireArgs(o.args, 1, "vertex");
    const auto v = vertexArg(x, o.args[0]);
    ConvexSet<W> c;
    if (!o.hull.empty()) {
      c = hull(x, vertexArgs(x, o.hull));
    } else {
      std::vector<Halfspace> hs;
      for (const auto& s : o.halfspaces) {
        hs.push_back(halfspaceArg(s));
        x.requireHyperplane(hs.back().hyperplane);
      }
      c = ConvexSet<W>::fromHalfspaces(x, hs);
    }
    j["gate"] = x.format(gate(x, c, v));
    j["separating"] = indexList(separatingFromSet(c, v));
    j["convex_set"] = strings(x, c.vertices());
    return j;
  }
  if (cmd == "bridge") {
    requireArgs(o.args, 2, "halfspaces");
    const auto h = halfspaceArg(o.args[0]);
    const auto k = halfspaceArg(o.args[1]);
    x.requireHyperplane(h.hyperplane);
    x.requireHyperplane(k.hyperplane);
    const auto r = bridge(x, h, k);
    Json pairs = Json::array();
    for (const auto& [a, b] : r.minPairs) pairs.push_back(Json::array({x.format(a), x.format(b)}));
    j["gap"] = io::lengthJson(r.gap);
    j["separators"] = indexList(r.separators);
    j["transverse_to_both"] = indexList(r.transverseToBoth);
    j["strongly_separated"] = stronglySeparated(x, h, k);
    j["minimal_pairs"] = std::move(pairs);
    j["bridge"] = strings(x, r.bridge);
    return j;
  }
  if (cmd == "crossratio") {
    requireArgs(o.args, 4, "vertices");
    const auto v = vertexArgs(x, o.args);
    Length value = 0;
    if (!o.restrict.empty()) {
      for (auto i : o.restrict) x.requireHyperplane(i);
      value = crossRatioRestricted(x, BitVector<W>::fromIndices(o.restrict), v[0], v[1], v[2], v[3]);
    } else {
      value = crossRatio(x, v[0], v[1], v[2], v[3], CrossRatioOptions{o.extended});
    }
    j["cross_ratio"] = io::lengthJson(value);
    return j;
  }
  if (cmd == "subdivide") return withComplex(subdivide(x, o.preserveMetric));
  if (cmd == "squarise") return withComplex(squarise(x));
  if (cmd == "hedgehog") {
    if (o.args.empty()) usage("hedgehog needs attach vertices");
    return withComplex(hedgehog(x, vertexArgs(x, o.args)));
  }
  if (cmd == "quotient") {
    const auto q = restrictionQuotient(x, o.indices);
    return withComplex(q.quotient, Json{{"hyperplanes", q.hyperplanes}});
  }
  if (cmd == "dualtree") {
    if (o.indices.size() != 1) usage("dualtree needs one hyperplane index");
    const auto t = dualTree(x, o.indices[0]);
    j["hyperplane"] = o.indices[0];
    j["hyperplane_class"] = t.hyperplaneClass;
    j["hyperplanes"] = t.map.hyperplanes;
    j["tree"] = io::complexJson(t.tree());
    return j;
  }
  if (cmd == "barycentre") {
    const auto r = medianBarycentre(x);
    if (r.vertex) {
      j["barycentre"] = x.format(*r.vertex);
      j["is_vertex"] = true;
    } else {
      j["barycentre"] = r.centre.toString(2 * n);
      j["is_vertex"] = false;
    }
    j["subdivision_vertex"] = r.centre.toString(2 * n);
    j["balanced"] = indexList(r.balanced);
    Json hs = Json::array();
    for (const auto& b : r.hyperplanes) {
      Json h;
      h["hyperplane"] = b.hyperplane;
      h["depth_negative"] = io::lengthJson(b.depths.negative);
      h["depth_positive"] = io::lengthJson(b.depths.positive);
      h["balanced"] = b.balanced;
      if (b.heavy) h["heavy"] = toString(*b.heavy);
      hs.push_back(std::move(h));
    }
    j["hyperplanes"] = std::move(hs);
    return j;
  }
  if (cmd == "geodesics") {
    Json list = Json::array();
    auto add = [&](const Geodesic<W>& g) {
      list.push_back(Json{{"path", strings(x, g.path)}, {"sequence", g.sequence}});
    };
    if (o.hasSequence) {
      requireArgs(o.args, 1, "start vertex");
      add(geodesicFromSequence(x, vertexArg(x, o.args[0]), o.indices));
    } else {
      requireArgs(o.args, 2, "vertices");
      const auto v = vertexArgs(x, o.args);
      for (const auto& g : enumerateGeodesics(x, v[0], v[1], o.limit)) add(g);
    }
    j["count"] = list.size();
    j["geodesics"] = std::move(list);
    return j;
  }
  if (cmd == "lean") {
    if (o.args.empty()) usage("lean needs a path of vertices");
    j["leanness"] = leannessConstant(x, vertexArgs(x, o.args));
    return j;
  }
  if (cmd == "factors") {
    Json list = Json::array();
    for (const auto& f : irreducibleFactors(x)) {
      list.push_back(Json{{"hyperplanes", f.hyperplanes}, {"complex", io::complexJson(f.complex)}});
    }
    j["factors"] = std::move(list);
    return j;
  }
  if (cmd == "displacement") {
    const auto doc2 = io::parseAutomorphismDocument(io::readFile(o.map));
    const auto g = automorphismFromHalfspaceMap(x, doc2.halfspaceMap);
    const auto r = displacement(x, g);
    j["displacement"] = io::lengthJson(r.length);
    Json prof = Json::array();
    for (const auto& [v, d] : r.profile) prof.push_back(Json{{"vertex", v.toString(2 * n)}, {"displacement", io::lengthJson(d)}});
    j["profile"] = std::move(prof);
    if (auto w = stronglyContractingWitness(x, g)) {
      j["strongly_contracting"] = Json::array({toString(w->h1), toString(w->h2)});
    } else {
      j["strongly_contracting"] = nullptr;
    }
    return j;
  }
  if (cmd == "check-essential") {
    const auto r = isREssential(x, o.depth);
    const auto h = isRHyperplaneEssential(x, o.depth);
    j["depth"] = io::lengthJson(o.depth);
    j["essential"] = r.ok();
    j["failing"] = r.failing;
    j["hyperplane_essential"] = h.ok();
    j["hyperplane_failing"] = h.failing;
    Json prof = Json::array();
    for (const auto& d : r.profile) prof.push_back(Json::array({io::lengthJson(d.negative), io::lengthJson(d.positive)}));
    j["profile"] = std::move(prof);
    return j;
  }
  (void)status;
  usage("unknown command '" + cmd + "'");
}

template <std::size_t W>
Json runIso(const cubical::io::ComplexDocument& a, const cubical::io::ComplexDocument& b) {
  const auto x = cubical::io::toComplex<W>(a);
  const auto y = cubical::io::toComplex<W>(b);
  const auto r = cubical::isIsomorphic(x, y);
  Json j;
  j["isomorphic"] = r.isomorphic;
  if (r.witness) j["halfspace_map"] = r.witness->toSigned();
  if (!r.isomorphic) j["mismatch"] = r.mismatch;
  return j;
}

template <class F>
Json withWords(std::size_t needed, F&& f) {
  using cubical::kNarrowWords;
  using cubical::kWideWords;
  if (needed <= BitVector<kNarrowWords>::kCapacity) return f(std::integral_constant<std::size_t, kNarrowWords>{});
  if (needed <= BitVector<kWideWords>::kCapacity) return f(std::integral_constant<std::size_t, kWideWords>{});
  throw Error(ErrorCode::CapacityExceeded, std::to_string(needed) + " hyperplanes exceed the widest representation");
}

inline Json runValidate(const cubical::io::ComplexDocument& doc, int& status) {
  return withWords(doc.n, [&](auto words) {
    constexpr std::size_t W = decltype(words)::value;
    std::vector<BitVector<W>> vs;
    for (const auto& s : doc.vertices) vs.push_back(*BitVector<W>::fromString(s));
    const auto report = cubical::validateComplex<W>(doc.n, vs);
    Json j;
    j["valid"] = report.ok();
    j["n_hyperplanes"] = doc.n;
    j["vertex_count"] = doc.vertices.size();
    Json vio = Json::array();
    for (const auto& v : report.violations) {
      vio.push_back(Json{{"kind", std::string(cubical::violationKindName(v.kind))}, {"message", v.message}, {"witness", v.witness}});
    }
    j["violations"] = std::move(vio);
    if (!report.ok()) status = 1;
    return j;
  });
}

inline Json runDual(const Options& o) {
  using namespace cubical;
  const auto text = io::readFile(o.in);
  if (o.pocset) {
    const auto doc = io::parsePocsetDocument(text);
    return withWords(doc.n, [&](auto words) {
      constexpr std::size_t W = decltype(words)::value;
      return io::complexJson(complexFromPocset<W>(doc.relations, doc.n));
    });
  }
  const auto doc = io::parseWallspaceDocument(text);
  return withWords(doc.wallspace.walls.size(), [&](auto words) {
    constexpr std::size_t W = decltype(words)::value;
    const auto d = complexFromWallspace<W>(doc.wallspace);
    Json j = io::complexJson(d.complex);
    j["base_point"] = d.basePoint;
    j["principal"] = strings(d.complex, d.principal);
    j["all_points_in_component"] = d.allPointsInComponent;
    return j;
  });
}

}  // namespace detail

/// Runs one cubetool command; returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite CAT(0) cube complexes: duality, medians, cross ratios, barycentres", "cubetool"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string isoA;
  std::string isoB;
  auto addIn = [&](CLI::App* s) { s->add_option("--in", o.in, "input document")->required(); };
  auto addCommon = [&](CLI::App* s) {
    addIn(s);
    s->add_option("--out", o.out, "write the result here instead of stdout");
    s->add_option("--weights", o.weights, "hyperplane weights overriding the document")->delimiter(',')->allow_extra_args(false);
  };
  auto cmd = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    addCommon(s);
    return s;
  };

  cmd("validate", "check median closure, connectivity and coordinates");
  auto* dual = app.add_subcommand("dual", "cube complex dual to a wallspace or pocset document");
  addIn(dual);
  dual->add_option("--out", o.out);
  dual->add_flag("--pocset", o.pocset, "input is a pocset document");
  cmd("pocset", "pocset relations of a complex");
  cmd("median", "median of three vertices")->add_option("vertices", o.args)->expected(3);
  cmd("interval", "interval between two vertices")->add_option("vertices", o.args)->expected(2);
  {
    auto* s = cmd("gate", "gate projection onto a convex set");
    s->add_option("vertex", o.args)->expected(1);
    auto* hs = s->add_option("--halfspaces", o.halfspaces, "convex set as an intersection, e.g. 0+,2-")->delimiter(',')->allow_extra_args(false);
    s->add_option("--hull", o.hull, "convex set as the hull of vertices")->delimiter(',')->allow_extra_args(false)->excludes(hs);
  }
  cmd("bridge", "bridge between disjoint halfspaces")->add_option("halfspaces", o.args)->expected(2);
  {
    auto* s = cmd("crossratio", "cross ratio of four vertices");
    s->add_option("vertices", o.args)->expected(4);
    s->add_option("--restrict", o.restrict, "count only these hyperplanes")->delimiter(',')->allow_extra_args(false);
    s->add_flag("--extended", o.extended, "allow coincident pairs");
  }
  cmd("subdivide", "cubical first subdivision")->add_flag("--preserve-metric", o.preserveMetric, "halve weights");
  cmd("squarise", "squarisation");
  cmd("hedgehog", "attach pendant edges")->add_option("vertices", o.args)->required();
  cmd("quotient", "restriction quotient")->add_option("--hyperplanes", o.indices)->delimiter(',')->allow_extra_args(false)->required();
  cmd("dualtree", "dual tree of a hyperplane")->add_option("hyperplane", o.indices)->expected(1)->required();
  cmd("barycentre", "median barycentre");
  {
    auto* s = cmd("geodesics", "enumerate or reconstruct geodesics");
    s->add_option("vertices", o.args);
    s->add_option("--sequence", o.indices, "hyperplane order from the first vertex")->delimiter(',')->allow_extra_args(false);
    s->add_option("--limit", o.limit, "maximum number of geodesics");
  }
  cmd("lean", "leanness constant of a geodesic")->add_option("path", o.args)->required();
  cmd("factors", "irreducible product factors");
  {
    auto* s = app.add_subcommand("iso", "isomorphism test of two complexes");
    s->add_option("first", isoA)->required();
    s->add_option("second", isoB)->required();
    s->add_option("--out", o.out);
  }
  cmd("displacement", "displacement of an automorphism")->add_option("--map", o.map, "automorphism document")->required();
  cmd("check-essential", "essentiality profile")->add_option("--depth", o.depth, "depth R");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    Json j{{"error", "ParseError"}, {"message", std::string("ParseError: ") + e.what()}, {"witness", Json::array()}};
    err << j.dump(2) << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "geodesics") o.hasSequence = app.get_subcommands().front()->count("--sequence") > 0;
  int status = 0;
  try {
    Json result;
    using namespace cubical;
    if (name == "dual") {
      result = detail::runDual(o);
    } else if (name == "iso") {
      const auto a = io::parseComplexDocument(io::readFile(isoA));
      const auto b = io::parseComplexDocument(io::readFile(isoB));
      result = detail::withWords(std::max(a.n, b.n), [&](auto words) { return detail::runIso<decltype(words)::value>(a, b); });
    } else {
      const auto doc = io::parseComplexDocument(io::readFile(o.in));
      if (name == "validate") {
        result = detail::runValidate(doc, status);
      } else {
        result = detail::withWords(detail::capacityNeeded(name, doc.n, o), [&](auto words) {
          return detail::runOnComplex<decltype(words)::value>(name, doc, o, status);
        });
      }
    }
    const std::string text = result.dump(2) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + o.out + "'", {o.out});
      f << text;
    }
    return status;
  } catch (const Error& e) {
    err << detail::errorJson(e).dump(2) << "\n";
    return e.isParseError() ? 2 : 1;
  }
}

}  // namespace cubetool
