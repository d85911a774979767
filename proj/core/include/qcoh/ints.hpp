#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace qcoh {

/// Exact integer used throughout the integer linear algebra.  Normal-form
/// intermediates can blow up well past 64 bits, so nothing here wraps.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

/// gcd(a, b) >= 0, gcd(0, 0) = 0.
inline Int gcd_int(Int a, Int b)
{
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

/// Extended gcd: returns g = gcd(a,b) and sets x, y with a*x + b*y = g.
inline Int exgcd_int(const Int& a, const Int& b, Int& x, Int& y)
{
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return abs_int(a);
    }
    Int x1, y1;
    Int g = exgcd_int(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline std::int64_t gcd_i64(std::int64_t a, std::int64_t b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t r = a % b;
        a = b;
        b = r;
    }
    return a;
}

} // namespace qcoh
