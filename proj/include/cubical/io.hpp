#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cubical/complex.hpp"
#include "cubical/duality.hpp"
#include "cubical/error.hpp"
#include "cubical/halfspace.hpp"
#include "cubical/weights.hpp"

namespace cubical::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Shortest decimal that reads back to the same double.
inline std::string formatDecimal(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parseDecimal(std::string_view s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

/// Lengths as JSON: integers when integral, strings for infinities, else numbers.
inline Json lengthJson(Length v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::fabs(v) < 9e15 && v == std::floor(v)) return static_cast<std::int64_t>(v);
  return v;
}

namespace detail {

[[noreturn]] inline void fieldError(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + what, {field});
}

[[noreturn]] inline void invariantError(const std::string& name, const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, "invariant '" + name + "' violated: " + what, {name});
}

inline Json parseText(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what(), {"line " + std::to_string(line)}, line);
  }
}

inline const Json& require(const Json& j, const std::string& key) {
  if (!j.is_object()) fieldError("<root>", "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fieldError(key, "missing");
  return *it;
}

inline std::size_t requireIndex(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fieldError(field, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline void checkVersion(const Json& j) {
  const auto& v = require(j, "format_version");
  if (!v.is_number_integer() || v.get<std::int64_t>() != kFormatVersion) {
    fieldError("format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  }
}

inline std::vector<Length> parseWeights(const Json& w, std::size_t n) {
  if (!w.is_array()) fieldError("weights", "expected an array");
  if (w.size() != n) fieldError("weights", "expected " + std::to_string(n) + " entries, got " + std::to_string(w.size()));
  std::vector<Length> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string field = "weights[" + std::to_string(i) + "]";
    std::optional<double> v;
    if (w[i].is_string()) {
      v = parseDecimal(w[i].get<std::string>());
    } else if (w[i].is_number()) {
      v = w[i].get<double>();
    }
    if (!v) fieldError(field, "expected a decimal");
    if (!(*v > 0) || !std::isfinite(*v)) invariantError("positive_weights", field + " is not a positive finite number");
    out.push_back(*v);
  }
  return out;
}

}  // namespace detail

/// A complex as read from or written to text: bit-string vertices plus optional weights.
struct ComplexDocument {
  std::size_t n = 0;
  std::vector<std::string> vertices;
  std::optional<std::vector<Length>> weights;
};

inline ComplexDocument complexDocumentFromJson(const Json& j) {
  detail::checkVersion(j);
  ComplexDocument d;
  d.n = detail::requireIndex(detail::require(j, "n_hyperplanes"), "n_hyperplanes");
  const auto& vs = detail::require(j, "vertices");
  if (!vs.is_array()) detail::fieldError("vertices", "expected an array");
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const std::string field = "vertices[" + std::to_string(k) + "]";
    if (!vs[k].is_string()) detail::fieldError(field, "expected a bit-string");
    auto s = vs[k].get<std::string>();
    if (s.size() != d.n) {
      detail::fieldError(field, "length " + std::to_string(s.size()) + " differs from n_hyperplanes " + std::to_string(d.n));
    }
    if (s.find_first_not_of("01") != std::string::npos) detail::fieldError(field, "bit-strings use only '0' and '1'");
    d.vertices.push_back(std::move(s));
  }
  if (auto it = j.find("weights"); it != j.end()) d.weights = detail::parseWeights(*it, d.n);
  std::sort(d.vertices.begin(), d.vertices.end());
  d.vertices.erase(std::unique(d.vertices.begin(), d.vertices.end()), d.vertices.end());
  return d;
}

inline ComplexDocument parseComplexDocument(const std::string& text) {
  return complexDocumentFromJson(detail::parseText(text));
}

inline Json toJson(const ComplexDocument& d) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["n_hyperplanes"] = d.n;
  if (d.weights) {
    Json w = Json::array();
    for (auto v : *d.weights) w.push_back(formatDecimal(v));
    j["weights"] = std::move(w);
  }
  j["vertices"] = d.vertices;
  return j;
}

/// Canonical text: sorted vertices, shortest decimals, two-space indent, trailing newline.
inline std::string serialize(const ComplexDocument& d) { return toJson(d).dump(2) + "\n"; }

inline std::string canonicalise(const std::string& text) { return serialize(parseComplexDocument(text)); }

/// Builds the complex, validating it (InvalidComplex on failure).
template <std::size_t W>
BasicCubeComplex<W> toComplex(const ComplexDocument& d, bool validate = true) {
  BasicCubeComplex<W>::checkCapacity(d.n);
  std::vector<BitVector<W>> vs;
  for (const auto& s : d.vertices) vs.push_back(*BitVector<W>::fromString(s));
  std::optional<WeightFunction> w;
  if (d.weights) w = WeightFunction(*d.weights);
  return validate ? BasicCubeComplex<W>::fromVertices(d.n, std::move(vs), std::move(w))
                  : BasicCubeComplex<W>::fromTrustedVertices(d.n, std::move(vs), std::move(w));
}

/// Weights are written only when some weight differs from 1.
template <std::size_t W>
ComplexDocument toDocument(const BasicCubeComplex<W>& x) {
  ComplexDocument d;
  d.n = x.hyperplaneCount();
  for (const auto& v : x.vertices()) d.vertices.push_back(x.format(v));
  if (!x.weights().isUnit()) d.weights = x.weights().values();
  return d;
}

template <std::size_t W>
Json complexJson(const BasicCubeComplex<W>& x) {
  return toJson(toDocument(x));
}

struct WallspaceDocument {
  WallSpace wallspace;
};

inline WallspaceDocument parseWallspaceDocument(const std::string& text) {
  const auto j = detail::parseText(text);
  detail::checkVersion(j);
  WallspaceDocument d;
  auto& ws = d.wallspace;
  ws.groundSize = detail::requireIndex(detail::require(j, "ground_size"), "ground_size");
  ws.basePoint = detail::requireIndex(detail::require(j, "base_point"), "base_point");
  if (ws.basePoint >= ws.groundSize) detail::fieldError("base_point", "outside the ground set");
  const auto& walls = detail::require(j, "walls");
  if (!walls.is_array()) detail::fieldError("walls", "expected an array");
  std::vector<std::vector<char>> blocks;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const std::string field = "walls[" + std::to_string(i) + "]";
    if (!walls[i].is_array()) detail::fieldError(field, "expected an array of point indices");
    std::vector<std::size_t> block;
    std::vector<char> member(ws.groundSize, 0);
    for (std::size_t k = 0; k < walls[i].size(); ++k) {
      const auto p = detail::requireIndex(walls[i][k], field + "[" + std::to_string(k) + "]");
      if (p >= ws.groundSize) detail::fieldError(field, "point " + std::to_string(p) + " outside the ground set");
      member[p] = 1;
      block.push_back(p);
    }
    const auto size = static_cast<std::size_t>(std::count(member.begin(), member.end(), 1));
    if (size == 0 || size == ws.groundSize) detail::invariantError("proper_blocks", field + " is empty or the whole ground set");
    for (std::size_t prev = 0; prev < blocks.size(); ++prev) {
      bool same = true;
      bool opposite = true;
      for (std::size_t p = 0; p < ws.groundSize; ++p) {
        same &= blocks[prev][p] == member[p];
        opposite &= blocks[prev][p] != member[p];
      }
      if (same || opposite) {
        detail::invariantError("distinct_partitions", "walls[" + std::to_string(prev) + "] and " + field + " induce the same partition");
      }
    }
    blocks.push_back(std::move(member));
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    ws.walls.push_back(std::move(block));
  }
  return d;
}

inline Json toJson(const WallspaceDocument& d) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["ground_size"] = d.wallspace.groundSize;
  j["walls"] = d.wallspace.walls;
  j["base_point"] = d.wallspace.basePoint;
  return j;
}

struct AutomorphismDocument {
  std::vector<std::int64_t> halfspaceMap;
};

inline AutomorphismDocument parseAutomorphismDocument(const std::string& text) {
  const auto j = detail::parseText(text);
  detail::checkVersion(j);
  const auto& m = detail::require(j, "halfspace_map");
  if (!m.is_array()) detail::fieldError("halfspace_map", "expected an array");
  AutomorphismDocument d;
  std::vector<char> hit(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string field = "halfspace_map[" + std::to_string(i) + "]";
    if (!m[i].is_number_integer()) detail::fieldError(field, "expected a signed integer");
    const auto e = m[i].get<std::int64_t>();
    const auto mag = static_cast<std::size_t>(e < 0 ? -e : e);
    if (e == 0 || mag > m.size() || hit[mag - 1]) {
      detail::invariantError("signed_permutation", field + " does not extend to a permutation");
    }
    hit[mag - 1] = 1;
    d.halfspaceMap.push_back(e);
  }
  return d;
}

inline Json toJson(const AutomorphismDocument& d) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["halfspace_map"] = d.halfspaceMap;
  return j;
}

/// Abstract pocset input: relations [["1+","0+"], ...] meaning first ⊆ second.
struct PocsetDocument {
  std::size_t n = 0;
  std::vector<Inclusion> relations;
};

inline PocsetDocument parsePocsetDocument(const std::string& text) {
  const auto j = detail::parseText(text);
  detail::checkVersion(j);
  PocsetDocument d;
  d.n = detail::requireIndex(detail::require(j, "n_hyperplanes"), "n_hyperplanes");
  const auto& rel = detail::require(j, "relations");
  if (!rel.is_array()) detail::fieldError("relations", "expected an array");
  for (std::size_t k = 0; k < rel.size(); ++k) {
    const std::string field = "relations[" + std::to_string(k) + "]";
    if (!rel[k].is_array() || rel[k].size() != 2 || !rel[k][0].is_string() || !rel[k][1].is_string()) {
      detail::fieldError(field, "expected a pair of halfspaces such as [\"1+\", \"0+\"]");
    }
    auto a = parseHalfspace(rel[k][0].get<std::string>());
    auto b = parseHalfspace(rel[k][1].get<std::string>());
    if (!a || !b) detail::fieldError(field, "bad halfspace");
    if (a->hyperplane >= d.n || b->hyperplane >= d.n) detail::fieldError(field, "hyperplane index out of range");
    d.relations.push_back({*a, *b});
  }
  return d;
}

inline Json toJson(const PocsetDocument& d) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["n_hyperplanes"] = d.n;
  Json rel = Json::array();
  for (const auto& r : d.relations) rel.push_back(Json::array({toString(r.sub), toString(r.sup)}));
  j["relations"] = std::move(rel);
  return j;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'", {path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cubical::io
