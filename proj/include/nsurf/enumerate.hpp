#pragma once

#include <cstdint>
#include <vector>

#include "nsurf/normal_coords.hpp"

namespace nsurf {

struct EnumerateOptions {
    Mode mode = Mode::OneNormal;
    std::int64_t weight_cap = 0;  // keep vectors with total weight <= cap
    bool compatible = true;       // false: drop the one-quad-type-per-tet rule
    std::size_t max_results = 1'000'000;
};

// Every nonzero non-negative vector satisfying matching (and compatibility,
// unless disabled) whose total weight is at most the cap, in surface_less
// order. Exhaustive search; meant for small triangulations and caps. Throws
// ResourceLimit past max_results.
std::vector<NormalVector> enumerate_admissible(const Triangulation& tri, const EnumerateOptions& opts);

}  // namespace nsurf
