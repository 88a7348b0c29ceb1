#pragma once

#include <stdexcept>
#include <utility>

namespace ncphase {

// Laguerre polynomial L_n(x) by the three-term recurrence
//   (n+1) L_{n+1}(x) = (2n+1-x) L_n(x) - n L_{n-1}(x),
// well conditioned over the index range used here.
inline double laguerre(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: negative index");
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
        p0 = std::exchange(p1, next);
    }
    return p1;
}

} // namespace ncphase
