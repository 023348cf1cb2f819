#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "nsurf/triangulation.hpp"

namespace census {

inline std::string read(const std::string& name) {
    std::ifstream in(std::string(NSURF_CENSUS_DIR) + "/" + name + ".tri");
    if (!in) throw std::runtime_error("missing census file " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nsurf::Triangulation load(const std::string& name) { return nsurf::parse_triangulation(read(name)); }

}  // namespace census
