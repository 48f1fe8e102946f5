#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"

namespace coulomb {

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_c[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline bool near_pole(std::complex<double> z) {
    if (z.real() > 0.5) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z - std::complex<double>(r, 0.0)) < 1e-12;
}

inline std::complex<double> lanczos_log_gamma(std::complex<double> z) {
    // valid for Re z >= 0.5
    using std::numbers::pi;
    z -= 1.0;
    std::complex<double> a = lanczos_c[0];
    for (int i = 1; i < 9; ++i) a += lanczos_c[i] / (z + double(i));
    std::complex<double> t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

// log Gamma(z); the imaginary part is a continuous branch of arg Gamma
// for Re z >= 1/2 and a reflection-based branch otherwise.
inline std::complex<double> log_gamma_complex(std::complex<double> z) {
    using std::numbers::pi;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_gamma_complex: non-finite argument");
    if (detail::near_pole(z))
        throw PoleError("log_gamma_complex: argument at a pole of Gamma");
    if (z.real() >= 0.5) return detail::lanczos_log_gamma(z);
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    std::complex<double> s = std::sin(pi * z);
    return std::log(pi) - std::log(s) - detail::lanczos_log_gamma(1.0 - z);
}

// log|Gamma(x)| and sign of Gamma(x) for real x off the poles
inline double log_abs_gamma(double x, int* sign = nullptr) {
    if (sign) {
        if (x > 0.0) {
            *sign = 1;
        } else {
            double c = std::ceil(-x);
            *sign = (static_cast<long long>(c) % 2 == 0) ? 1 : -1;
        }
    }
    return log_gamma_complex({x, 0.0}).real();
}

// 1/Gamma(x), zero at the poles
inline double reciprocal_gamma(double x) {
    double r = std::round(x);
    if (r <= 0.0 && x == r) return 0.0;
    int s = 1;
    double lg = log_abs_gamma(x, &s);
    return s * std::exp(-lg);
}

}  // namespace coulomb
