#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "gamma.hpp"
#include "params.hpp"
#include "series.hpp"

namespace coulomb {

struct EvalResult {
    double value = 0.0;
    double abs_err_bound = 0.0;
    int terms_used = 0;
    bool scaled_surrogate = false;
};

namespace detail {

inline constexpr double round_off = 1.1102230246251565e-16;
// relative accuracy of the Lanczos log-gamma
inline constexpr double gamma_rel_err = 1e-14;

inline EvalResult as_result(dd v, double e, int terms) {
    double d = static_cast<double>(v);
    return {d, e + round_off * std::fabs(d), terms, false};
}

inline void require_positive(double x, const char* what) {
    if (!(x > 0.0)) throw DomainError(std::string(what) + " needs x > 0");
}

inline void require_regular(const CoulombParams& p, const char* what) {
    if (!p.regular())
        throw RegimeError(std::string(what) + " undefined at half-integer ell " + p.str());
}

}  // namespace detail

// log|C| and sign(C) for the Gamow constant
inline double log_abs_gamow(const CoulombParams& p, int* sign = nullptr) {
    using std::numbers::pi;
    detail::require_regular(p, "gamow_constant");
    double l = p.ell(), e = p.eta();
    int s = 1;
    double lg2 = log_abs_gamma(2.0 * l + 2.0, &s);
    if (sign) *sign = s;
    return l * std::numbers::ln2 - pi * e / 2.0 +
           log_gamma_complex({l + 1.0, e}).real() - lg2;
}

inline double gamow_constant(const CoulombParams& p) {
    int s = 1;
    double lc = log_abs_gamow(p, &s);
    return s * std::exp(lc);
}

inline EvalResult phi_eval(const CoulombParams& p, double x) {
    PhiValues v = phi_values(p, x);
    return detail::as_result(v.f, v.e0, v.terms);
}

inline EvalResult phi_derivative(const CoulombParams& p, double x) {
    PhiValues v = phi_values(p, x);
    return detail::as_result(v.d1, v.e1, v.terms);
}

inline EvalResult phi_second_derivative(const CoulombParams& p, double x) {
    PhiValues v = phi_values(p, x);
    return detail::as_result(v.d2, v.e2, v.terms);
}

inline EvalResult F_eval(const CoulombParams& p, double x) {
    detail::require_positive(x, "F_eval");
    PhiValues v = phi_values(p, x);
    double c = gamow_constant(p);
    double s = c * std::pow(x, p.ell() + 1.0);
    double phi = static_cast<double>(v.f);
    double val = s * phi;
    double err = std::fabs(s) * v.e0 + (detail::gamma_rel_err + 4 * detail::round_off) * std::fabs(val);
    return {val, err, v.terms, false};
}

inline EvalResult F_derivative(const CoulombParams& p, double x) {
    detail::require_positive(x, "F_derivative");
    PhiValues v = phi_values(p, x);
    double l1 = p.ell() + 1.0;
    double s = gamow_constant(p) * std::pow(x, p.ell());
    double inner = static_cast<double>(v.f * l1 + v.d1 * x);
    double val = s * inner;
    double err = std::fabs(s) * (std::fabs(l1) * v.e0 + x * v.e1) +
                 (detail::gamma_rel_err + 4 * detail::round_off) * std::fabs(val);
    return {val, err, v.terms, false};
}

namespace detail {

// Constant of the half-integer limit, (2i)^n (-(n-1)/2 - i eta)_n, which is
// real for every n. It vanishes for odd n at eta = 0; the limit is then
// identically zero and x^n varphi_{(n-1)/2} is served instead (flagged).
inline double half_integer_constant(int n, double eta, bool* surrogate) {
    double c = std::ldexp(1.0, n);
    if (n % 2 == 0) {
        for (int m = 1; m <= n / 2; ++m) c *= eta * eta + (m - 0.5) * (m - 0.5);
    } else {
        c *= eta;
        for (int m = 1; m <= (n - 1) / 2; ++m) c *= eta * eta + double(m) * m;
    }
    *surrogate = (c == 0.0);
    return *surrogate ? 1.0 : c;
}

struct VarphiValues {
    double f = 0.0, d1 = 0.0;
    double e0 = 0.0, e1 = 0.0;
    int terms = 0;
    bool surrogate = false;
};

inline VarphiValues varphi_values(const CoulombParams& p, double x) {
    VarphiValues out;
    if (p.regular()) {
        PhiValues v = phi_values(p, x);
        double rg = reciprocal_gamma(2.0 * p.ell() + 2.0);
        double a = std::fabs(rg);
        out.f = static_cast<double>(v.f) * rg;
        out.d1 = static_cast<double>(v.d1) * rg;
        out.e0 = a * v.e0 + (gamma_rel_err + 2 * round_off) * std::fabs(out.f);
        out.e1 = a * v.e1 + (gamma_rel_err + 2 * round_off) * std::fabs(out.d1);
        out.terms = v.terms;
        return out;
    }
    int n = p.half_integer_n();
    CoulombParams base((n - 1) / 2.0, p.eta());
    VarphiValues b = varphi_values(base, x);
    double c = half_integer_constant(n, p.eta(), &out.surrogate);
    double xn = std::pow(x, n);
    double xn1 = n * std::pow(x, n - 1);
    out.f = c * xn * b.f;
    out.d1 = c * (xn1 * b.f + xn * b.d1);
    double ac = std::fabs(c);
    out.e0 = ac * std::fabs(xn) * b.e0 + 2 * round_off * std::fabs(out.f);
    out.e1 = ac * (std::fabs(xn1) * b.e0 + std::fabs(xn) * b.e1) +
             4 * round_off * (std::fabs(c * xn1 * b.f) + std::fabs(c * xn * b.d1));
    out.terms = b.terms;
    return out;
}

}  // namespace detail

inline EvalResult varphi_eval(const CoulombParams& p, double x) {
    auto v = detail::varphi_values(p, x);
    return {v.f, v.e0, v.terms, v.surrogate};
}

inline EvalResult varphi_derivative(const CoulombParams& p, double x) {
    auto v = detail::varphi_values(p, x);
    return {v.d1, v.e1, v.terms, v.surrogate};
}

// (phi')^2 - phi phi'' with phi'' eliminated through the ODE
inline double laguerre_expression(const CoulombParams& p, double x) {
    using detail::dd;
    if (x == 0.0) throw DomainError("laguerre_expression undefined at x = 0");
    PhiValues v = phi_values(p, x);
    double l1 = p.ell() + 1.0;
    dd xd(x);
    dd coef = (xd * xd - dd(2.0 * p.eta()) * xd - dd(l1) * dd(l1)) / (xd * xd);
    dd w = v.d1 + v.f * dd(l1) / xd;
    return static_cast<double>(coef * v.f * v.f + w * w);
}

// Same quantity using the independently summed phi''
inline double laguerre_direct(const CoulombParams& p, double x) {
    PhiValues v = phi_values(p, x);
    return static_cast<double>(v.d1 * v.d1 - v.f * v.d2);
}

// Residual of F'' + (1 - 2 eta/x - l(l+1)/x^2) F for x > 0, relative to
// max(1, |F|); for x < 0 the phi form, relative to its largest term.
inline double ode_residual(const CoulombParams& p, double x) {
    using detail::dd;
    if (x == 0.0) throw DomainError("ode_residual undefined at x = 0");
    PhiValues v = phi_values(p, x);
    double l1 = p.ell() + 1.0;
    dd xd(x);
    dd r = xd * v.d2 + v.d1 * (2.0 * l1) + (xd - dd(2.0 * p.eta())) * v.f;
    if (x > 0.0) {
        double s = gamow_constant(p) * std::pow(x, p.ell());
        double F = s * x * static_cast<double>(v.f);
        return s * static_cast<double>(r) / std::max(1.0, std::fabs(F));
    }
    double scale = std::fabs(x * static_cast<double>(v.d2)) +
                   std::fabs(2.0 * l1 * static_cast<double>(v.d1)) +
                   std::fabs((x - 2.0 * p.eta()) * static_cast<double>(v.f));
    return static_cast<double>(r) / std::max(1.0, scale);
}

struct RecurrenceResiduals {
    double r1_down = 0.0;
    double r1_up = 0.0;
    double r2 = 0.0;
};

// The three contiguous relations between F_{l-1}, F_l, F_{l+1}, each
// normalised by its largest term.
inline RecurrenceResiduals recurrence_residuals(const CoulombParams& p, double x) {
    detail::require_positive(x, "recurrence_residuals");
    CoulombParams lo = p.shifted(-1.0), hi = p.shifted(1.0);
    detail::require_regular(p, "recurrence_residuals");
    detail::require_regular(lo, "recurrence_residuals");
    detail::require_regular(hi, "recurrence_residuals");
    double l = p.ell(), e = p.eta();
    double F = F_eval(p, x).value, Fp = F_derivative(p, x).value;
    double Fm = F_eval(lo, x).value, Fh = F_eval(hi, x).value;
    double sh = std::sqrt((l + 1) * (l + 1) + e * e), sl = std::sqrt(l * l + e * e);
    auto rel = [](double a, double b, double c) {
        double s = std::max({std::fabs(a), std::fabs(b), std::fabs(c), 1e-300});
        return std::fabs(a + b + c) / s;
    };
    RecurrenceResiduals r;
    r.r1_up = rel((l + 1) * Fp, -((l + 1) * (l + 1) / x + e) * F, sh * Fh);
    r.r1_down = rel(l * Fp, (l * l / x + e) * F, -sl * Fm);
    r.r2 = rel((l + 1) * sl * Fm, -(2 * l + 1) * (e + l * (l + 1) / x) * F, l * sh * Fh);
    return r;
}

}  // namespace coulomb
