#pragma once

#include <string>
#include <vector>

#include "cubical/cubical.hpp"
#include "cubical/io.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(CUBICAL_FIXTURES) + "/" + name + ".json"; }

inline cubical::CubeComplex load(const std::string& name) {
  return cubical::io::toComplex<cubical::kNarrowWords>(cubical::io::parseComplexDocument(cubical::io::readFile(path(name))));
}

/// Every complex fixture, unit and weighted.
inline const std::vector<std::string>& complexNames() {
  static const std::vector<std::string> names{"p1", "p2", "p3", "p3_weighted", "p5", "q2", "t3",
                                              "star4", "cube3", "threesquares", "ladder", "p1_subdivided"};
  return names;
}

}  // namespace fixtures
