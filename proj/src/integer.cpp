#include "nsurf/integer.hpp"

#include "nsurf/errors.hpp"

namespace nsurf {

Integer pow2(std::uint64_t k) {
    Integer r = 1;
    r <<= k;
    return r;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string factor_pow2(const Integer& x) {
    if (x == 0) return "0";
    Integer m = x;
    std::uint64_t k = 0;
    if (m < 0) m = -m;
    k = boost::multiprecision::lsb(m);
    m >>= k;
    std::string s = (x < 0 ? "-" : "");
    return s + "2^" + std::to_string(k) + "*" + m.str();
}

Integer ceil_sqrt(const Integer& x) {
    if (x < 0) throw InvalidInput("ceil_sqrt of a negative number");
    Integer r = boost::multiprecision::sqrt(x);
    if (r * r < x) ++r;
    return r;
}

std::int64_t to_int64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw InvalidInput("integer " + x.str() + " exceeds the machine range");
    return static_cast<std::int64_t>(x);
}

}  // namespace nsurf
