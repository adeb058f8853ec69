#pragma once

#include <cmath>
#include <complex>

namespace berg::detail {

// |d|^{-ex} via the squared modulus, with fast paths for the exponents the
// distance theorems actually use.
inline double inv_abs_pow(const std::complex<double>& d, double ex) {
    const double d2 = std::norm(d);
    if (ex == 3.0) return 1.0 / (d2 * std::sqrt(d2));
    if (ex == 4.0) return 1.0 / (d2 * d2);
    if (ex == 2.0) return 1.0 / d2;
    return std::pow(d2, -0.5 * ex);
}

// base^{-ex} for complex base, principal branch, integer fast paths.
inline std::complex<double> cpow_neg(const std::complex<double>& base, double ex) {
    if (ex == 2.0) return 1.0 / (base * base);
    if (ex == 3.0) return 1.0 / (base * base * base);
    if (ex == 4.0) {
        const std::complex<double> b2 = base * base;
        return 1.0 / (b2 * b2);
    }
    return std::pow(base, -ex);
}

inline double qpow(double x, double q) {
    if (q == 2.0) return x * x;
    if (q == 1.0) return x;
    return std::pow(x, q);
}

}  // namespace berg::detail
