#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "detail/double_double.hpp"
#include "errors.hpp"
#include "params.hpp"

namespace coulomb {

// Largest |x| served by the evaluators. COULOMB_MAX_X overrides it.
inline constexpr double default_max_x = 50.0;

inline double certified_max_x() {
    if (const char* s = std::getenv("COULOMB_MAX_X")) {
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end != s && std::isfinite(v) && v > 0.0) return v;
    }
    return default_max_x;
}

struct SeriesExpansion {
    CoulombParams params;
    std::vector<double> coeffs;
    int K = 0;
    double radius_hint = 0.0;
};

// Values of phi, phi', phi'' at one point with absolute error bounds.
struct PhiValues {
    detail::dd f, d1, d2;
    double e0 = 0.0, e1 = 0.0, e2 = 0.0;
    int terms = 0;
};

namespace detail {

inline void require_series_regime(const CoulombParams& p) {
    if (p.regular()) return;
    if (p.half_integer_n() == 1 && p.eta() != 0.0)
        throw ParameterError("phi undefined at ell = -1 with eta != 0 " + p.str());
    throw RegimeError("phi undefined at half-integer ell " + p.str());
}

// sum_{m>=1} (K+m)^pw * M * q^ceil(m/s), a bound for the weighted tail
inline double weighted_tail(double M, double q, int K, int pw, int s) {
    if (M == 0.0) return 0.0;
    double total = 0.0;
    for (int m = 1; m <= 400; ++m) {
        double qq = std::pow(q, (m + s - 1) / s);
        double w = pw == 0 ? 1.0 : std::pow(double(K + m), pw);
        double t = w * M * qq;
        total += t;
        if (t < 1e-40 * total && m > 3 * s) break;
    }
    return total;
}

inline constexpr double series_radius = 24.0;
inline constexpr int series_kmax = 2000;

// Power series about 0, double-double accumulation.
inline PhiValues phi_series_values(double ell, double eta, double x) {
    PhiValues out;
    double ax = std::fabs(x);
    if (x == 0.0) {
        out.f = dd(1.0);
        out.d1 = dd(eta) / (dd(ell) + dd(1.0));
        // 2 a_2 = (2 eta a_1 - 1) / (2 ell + 3)
        out.d2 = (out.d1 * (2.0 * eta) - dd(1.0)) / (dd(2.0 * ell) + dd(3.0));
        out.e0 = 0.0;
        out.e1 = dd_eps * abs(out.d1);
        out.e2 = dd_eps * abs(out.d2);
        out.terms = 3;
        return out;
    }
    dd two_eta(2.0 * eta);
    dd ap(0.0);                     // a_{k-2}
    dd a(1.0);                      // a_{k-1} at loop start
    dd xd(x);
    dd pw(1.0);                     // x^(k-1)
    dd s0(1.0), s1(0.0), s2(0.0);   // sums for phi, x phi', x^2 phi''
    double runmax = 1.0, absw0 = 1.0, absw1 = 0.0, absw2 = 0.0;
    double Aprev = 1.0, Acur = 1.0;
    int k = 1;
    int floor_k = static_cast<int>(2.0 * ax) + 30;
    for (;; ++k) {
        if (k > series_kmax) throw ConvergenceError("phi series did not converge");
        dd den = dd(double(k)) * (dd(double(k + 1)) + dd(2.0 * ell));
        dd an = (two_eta * a - ap) / den;
        pw = pw * xd;
        dd t = an * pw;
        double kk = k;
        s0 += t;
        s1 += t * kk;
        s2 += t * (kk * (kk - 1.0));
        ap = a;
        a = an;
        double At = abs(t);
        Aprev = Acur;
        Acur = At;
        runmax = std::max(runmax, std::max(abs(s0), At));
        absw0 += At;
        absw1 += At * kk;
        absw2 += At * kk * kk;
        if (k < floor_k) continue;
        double denq = (k + 1.0) * (k + 2.0 + 2.0 * ell);
        if (denq <= 0.0) continue;
        double q = (2.0 * std::fabs(eta) * ax + ax * ax) / denq;
        if (q >= 0.5) continue;
        double M = std::max(Acur, Aprev);
        double tail = 2.0 * q * M / (1.0 - q);
        if (tail <= dd_eps * runmax) {
            out.f = s0;
            out.d1 = s1 / xd;
            out.d2 = s2 / (xd * xd);
            double g = 8.0 * dd_eps * (k + 2.0);
            out.e0 = tail + g * absw0;
            out.e1 = (weighted_tail(M, q, k, 1, 2) + g * absw1) / ax;
            out.e2 = (weighted_tail(M, q, k, 2, 2) + g * absw2) / (ax * ax);
            out.terms = k + 1;
            return out;
        }
    }
}

// One Taylor step of the phi ODE from c to c + h.
inline void taylor_step(double ell, double eta, double c, double h, PhiValues& v) {
    // x phi'' + 2(ell+1) phi' + (x - 2 eta) phi = 0 about x = c, scaled by h^j
    dd hd(h);
    dd h2 = hd * hd;
    dd h3 = h2 * hd;
    dd cm = dd(c) - dd(2.0 * eta);
    dd Tm1(0.0), T0 = v.f, T1 = v.d1 * hd;
    dd s0 = T0 + T1, s1 = T1, s2(0.0);
    // double-precision transition matrix columns for error propagation
    double b0[3] = {0.0, 1.0, 0.0}, b1[3] = {0.0, 0.0, h};
    double sb0[3] = {1.0, 0.0, 0.0}, sb1[3] = {h, h, 0.0};  // {f, h f', h^2 f''}
    double cmd = c - 2.0 * eta;
    double absw = abs(T0) + abs(T1);
    double A2 = 0.0, A1 = abs(T0), A0 = abs(T1);
    double ah = std::fabs(h), ac = std::fabs(c);
    int j = 0;
    for (;; ++j) {
        if (j > series_kmax) throw ConvergenceError("taylor step did not converge");
        double jj = j;
        double fa = (jj + 1.0) * (jj + 2.0 * ell + 2.0);
        double den = c * (jj + 2.0) * (jj + 1.0);
        dd Tn = -(T1 * hd * fa + cm * h2 * T0 + h3 * Tm1) / dd(den);
        double p = jj + 2.0;
        s0 += Tn;
        s1 += Tn * p;
        s2 += Tn * (p * (p - 1.0));
        Tm1 = T0;
        T0 = T1;
        T1 = Tn;
        {
            double n0 = -(b0[2] * h * fa + cmd * h * h * b0[1] + h * h * h * b0[0]) / den;
            double n1 = -(b1[2] * h * fa + cmd * h * h * b1[1] + h * h * h * b1[0]) / den;
            b0[0] = b0[1]; b0[1] = b0[2]; b0[2] = n0;
            b1[0] = b1[1]; b1[1] = b1[2]; b1[2] = n1;
            sb0[0] += n0; sb0[1] += n0 * p; sb0[2] += n0 * p * (p - 1.0);
            sb1[0] += n1; sb1[1] += n1 * p; sb1[2] += n1 * p * (p - 1.0);
        }
        A2 = A1;
        A1 = A0;
        A0 = abs(Tn);
        absw += A0 * p * p;
        if (j < 8) continue;
        double q = (1.0 + std::fabs(2.0 * ell) / (jj + 3.0)) * ah / ac +
                   (std::fabs(cmd) * ah * ah + ah * ah * ah) / (ac * (jj + 3.0) * (jj + 2.0));
        if (q >= 0.5) continue;
        double M = std::max(A0, std::max(A1, A2));
        double tail = 3.0 * q * M / (1.0 - q);
        double scale = std::max(abs(s0), std::max(abs(s1), 1e-300));
        if (tail > dd_eps * scale) continue;
        int K = j + 2;
        double rnd = 8.0 * dd_eps * absw * (K + 2.0);
        double t0 = tail + rnd;
        double t1 = (weighted_tail(M, q, K, 1, 3) + rnd) / ah;
        double t2 = (weighted_tail(M, q, K, 2, 3) + rnd) / (ah * ah);
        // propagate incoming errors through the linear map
        double e0 = std::fabs(sb0[0]) * v.e0 + std::fabs(sb1[0]) * v.e1 + t0;
        double e1 = std::fabs(sb0[1] / h) * v.e0 + std::fabs(sb1[1] / h) * v.e1 + t1;
        double e2 = std::fabs(sb0[2] / (h * h)) * v.e0 + std::fabs(sb1[2] / (h * h)) * v.e1 + t2;
        v.f = s0;
        v.d1 = s1 / hd;
        v.d2 = s2 / h2;
        v.e0 = e0;
        v.e1 = e1;
        v.e2 = e2;
        v.terms += K + 1;
        return;
    }
}

inline PhiValues phi_values_raw(double ell, double eta, double x) {
    double ax = std::fabs(x);
    if (ax <= series_radius) return phi_series_values(ell, eta, x);
    double x0 = std::copysign(series_radius, x);
    PhiValues v = phi_series_values(ell, eta, x0);
    int nsteps = static_cast<int>(std::ceil((ax - series_radius) / 2.0));
    double h = (x - x0) / nsteps;
    double c = x0;
    for (int i = 1; i <= nsteps; ++i) {
        double next = (i == nsteps) ? x : x0 + i * h;
        taylor_step(ell, eta, c, next - c, v);
        c = next;
    }
    return v;
}

inline void check_domain(double x) {
    if (!std::isfinite(x)) throw DomainError("x must be finite");
    double m = certified_max_x();
    if (std::fabs(x) > m)
        throw DomainError("|x| = " + std::to_string(std::fabs(x)) +
                          " exceeds the evaluation domain " + std::to_string(m));
}

}  // namespace detail

// phi, phi', phi'' with error bounds; the workhorse behind every evaluator.
inline PhiValues phi_values(const CoulombParams& p, double x) {
    detail::require_series_regime(p);
    detail::check_domain(x);
    return detail::phi_values_raw(p.ell(), p.eta(), x);
}

// Coefficients a_0..a_K; radius_hint is the largest |x| for which the
// certified tail after K terms stays below 1e-16 of the leading term.
inline SeriesExpansion phi_series(const CoulombParams& p, int K) {
    detail::require_series_regime(p);
    if (K < 2) throw ParameterError("phi_series needs K >= 2");
    using detail::dd;
    std::vector<double> c(K + 1);
    dd ap(0.0), a(1.0);
    c[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        dd den = dd(double(k)) * (dd(double(k + 1)) + dd(2.0 * p.ell()));
        dd an = (dd(2.0 * p.eta()) * a - ap) / den;
        c[k] = static_cast<double>(an);
        ap = a;
        a = an;
    }
    auto tail_ok = [&](double r) {
        double denq = (K + 1.0) * (K + 2.0 + 2.0 * p.ell());
        if (denq <= 0.0) return false;
        double q = (2.0 * std::fabs(p.eta()) * r + r * r) / denq;
        if (q >= 0.5) return false;
        double M = std::max(std::fabs(c[K]) * std::pow(r, K),
                            std::fabs(c[K - 1]) * std::pow(r, K - 1));
        return 2.0 * q * M / (1.0 - q) <= 1e-16;
    };
    double lo = 0.0, hi = 1.0;
    while (tail_ok(hi) && hi < 1e6) hi *= 2.0;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (tail_ok(mid) ? lo : hi) = mid;
    }
    return {p, std::move(c), K, lo};
}

}  // namespace coulomb
