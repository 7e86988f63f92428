#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ptqes::numerics {

// Extended-precision binary float with a compile-time mantissa width, used
// by the oracle cross-checks of the double-precision paths.
template <unsigned MantissaBits>
using big_float = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<MantissaBits,
                                         boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

// Plain bisection in any scalar type; requires f(lo) f(hi) <= 0.
template <class Real, class F>
Real bisect_root(F&& f, Real lo, Real hi, int iters) {
    Real flo = f(lo);
    if (flo == 0) return lo;
    for (int i = 0; i < iters; ++i) {
        const Real mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        const Real fm = f(mid);
        if (fm == 0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

}  // namespace ptqes::numerics
