// bessel.hpp — Bessel function of the first kind, integer order, any sign

#pragma once

#include <cmath>

namespace floq {

// J_n(x) for integer n and real x of either sign.
// std::cyl_bessel_j only covers n >= 0, x >= 0; extend by the reflections
//   J_{-n}(x) = (-1)^n J_n(x),   J_n(-x) = (-1)^n J_n(x).
inline double bessel_j(int n, double x) {
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n & 1) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n & 1) sign = -sign;
    }
    if (x == 0.0) return n == 0 ? sign : 0.0;
    return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

}  // namespace floq
