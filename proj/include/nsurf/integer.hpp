#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace nsurf {

using Integer = boost::multiprecision::cpp_int;

// 2^k as an exact integer.
Integer pow2(std::uint64_t k);

// Decimal rendering.
std::string to_string(const Integer& x);

// Renders x as "2^k*m" with m odd (or "0"). Exact.
std::string factor_pow2(const Integer& x);

// Smallest y with y*y >= x, for x >= 0.
Integer ceil_sqrt(const Integer& x);

// Narrows to a machine integer; throws InvalidInput when out of range.
std::int64_t to_int64(const Integer& x);

}  // namespace nsurf
