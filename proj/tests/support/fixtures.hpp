#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "ptv/dsl.hpp"

namespace ptv::fixtures {

inline std::string path(const std::string& name) { return std::string(PTV_FIXTURE_DIR) + "/" + name; }

inline std::string text(const std::string& name) {
  std::ifstream in(path(name));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline SpecDocument load(const std::string& name) { return parse_spec(text(name)); }

}  // namespace ptv::fixtures
