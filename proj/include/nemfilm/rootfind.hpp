#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nemfilm {

// Bracketed bisection on a sign-changing function. The bracket [lo, hi] must
// satisfy f(lo)*f(hi) <= 0; refined until the interval width drops below
// rel_tol*|mid| (or abs_tol for roots near zero).
template <typename F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-15,
              double abs_tol = 1e-300, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw std::runtime_error("bisect: no sign change in bracket [" +
                                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
    for (int i = 0; i < max_iter; ++i) {
        double mid = 0.5 * (lo + hi);
        double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0) == (flo > 0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * std::abs(mid) + abs_tol) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace nemfilm
