#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "params.hpp"
#include "special.hpp"
#include "zeros.hpp"

namespace coulomb::ortho {

enum class Provenance { recurrence, explicit_form };

inline const char* to_string(Provenance p) {
    return p == Provenance::recurrence ? "recurrence" : "explicit";
}

// Dense coefficients c_0..c_n in the monomial basis.
struct MonicPolynomial {
    int degree = 0;
    std::vector<double> coeffs{1.0};
    Provenance provenance = Provenance::recurrence;

    double operator()(double x) const {
        double s = 0.0;
        for (int i = degree; i >= 0; --i) s = s * x + coeffs[i];
        return s;
    }
    double derivative(double x) const {
        double s = 0.0;
        for (int i = degree; i >= 1; --i) s = s * x + i * coeffs[i];
        return s;
    }
};

struct RecurrenceCoeffs {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double zeta = 1.0;  // beta_1 ... beta_n
};

inline constexpr int max_recurrence_degree = 200;
inline constexpr int max_explicit_degree = 60;

inline void require_family(const CoulombParams& p) {
    if (!(p.ell() > -1.5) || p.ell() == -1.0)
        throw ParameterError("polynomial family needs ell > -3/2, ell != -1 " + p.str());
}

inline double alpha(double ell, double eta, int n) {
    return -eta / (2.0 * (ell + n + 1.0) * (ell + n + 2.0));
}

inline double beta(double ell, double eta, int n) {
    double a = ell + n + 1.0, b = 2.0 * ell + 2.0 * n + 1.0;
    return (a * a + eta * eta) / (2.0 * b * (b + 1.0) * (b + 2.0) * a);
}

inline RecurrenceCoeffs recurrence_coeffs(const CoulombParams& p, int n) {
    require_family(p);
    if (n < 0) throw ParameterError("recurrence_coeffs: n must be >= 0");
    RecurrenceCoeffs r{n, alpha(p.ell(), p.eta(), n), beta(p.ell(), p.eta(), n), 1.0};
    for (int k = 1; k <= n; ++k) r.zeta *= beta(p.ell(), p.eta(), k);
    return r;
}

inline MonicPolynomial R_poly(const CoulombParams& p, int n) {
    require_family(p);
    if (n < 0) throw ParameterError("R_poly: n must be >= 0");
    if (n > max_recurrence_degree) throw DomainError("R_poly: degree beyond 200 overflows");
    double l = p.ell(), e = p.eta();
    std::vector<double> y0{1.0}, y1{-alpha(l, e, 0), 1.0};
    if (n == 0) return {0, y0, Provenance::recurrence};
    for (int k = 1; k < n; ++k) {
        double a = alpha(l, e, k), b = beta(l, e, k);
        std::vector<double> y2(k + 2, 0.0);
        for (int i = 0; i <= k; ++i) {
            y2[i + 1] += y1[i];
            y2[i] -= a * y1[i];
        }
        for (int i = 0; i < k; ++i) y2[i] -= b * y0[i];
        y0 = std::move(y1);
        y1 = std::move(y2);
    }
    return {n, y1, Provenance::recurrence};
}

// R_n and R_n' at a point straight from the recurrence.
inline std::pair<double, double> R_value(double ell, double eta, int n, double x) {
    if (n == 0) return {1.0, 0.0};
    double y0 = 1.0, d0 = 0.0;
    double y1 = x - alpha(ell, eta, 0), d1 = 1.0;
    for (int k = 1; k < n; ++k) {
        double a = alpha(ell, eta, k), b = beta(ell, eta, k);
        double y2 = (x - a) * y1 - b * y0;
        double d2 = y1 + (x - a) * d1 - b * d0;
        y0 = y1; y1 = y2;
        d0 = d1; d1 = d2;
    }
    return {y1, d1};
}

// Bound on |zeros| from Gershgorin discs of the Jacobi matrix.
inline double spectral_bound(const CoulombParams& p, int n) {
    double r = 0.0;
    double l = p.ell(), e = p.eta();
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        if (i >= 1) off += std::sqrt(beta(l, e, i));
        if (i + 1 <= n - 1) off += std::sqrt(beta(l, e, i + 1));
        r = std::max(r, std::fabs(alpha(l, e, i)) + off);
    }
    return r;
}

// Size of c_j for a monic degree-n polynomial with zeros in [-rho, rho].
inline std::vector<double> coefficient_scale(const CoulombParams& p, int n) {
    double rho = std::max(spectral_bound(p, n), 1e-300);
    std::vector<double> s(n + 1);
    double binom = 1.0;
    for (int j = n; j >= 0; --j) {
        s[j] = binom * std::pow(rho, n - j);
        binom = binom * (j) / (n - j + 1);
    }
    return s;
}

// Coefficients from the terminating 3F2 representation, complex arithmetic.
inline MonicPolynomial R_explicit(const CoulombParams& p, int n) {
    require_family(p);
    if (n < 0) throw ParameterError("R_explicit: n must be >= 0");
    if (n > max_explicit_degree) throw DomainError("R_explicit: degree beyond 60");
    using cd = std::complex<double>;
    const cd I(0.0, 1.0);
    double l = p.ell(), e = p.eta();
    std::vector<double> c(n + 1, 0.0);
    auto scale = coefficient_scale(p, n);
    cd pre(1.0, 0.0);  // (-l - i e - n - 1)_k i^k / (k! (-2l - 2n - 2)_k)
    cd A(-l - n - 1.0, -e);
    double B = -2.0 * l - 2.0 * n - 2.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) pre *= (A + double(k - 1)) * I / (double(k) * (B + k - 1));
        cd a1(-k, 0.0), a2(2.0 * n + 2.0 * l + 3.0 - k, 0.0), a3(l + 1.0, e);
        cd b1(n + l + 2.0 - k, e), b2(2.0 * l + 2.0, 0.0);
        cd term(1.0, 0.0), sum(1.0, 0.0);
        for (int m = 0; m < k; ++m) {
            term *= (a1 + double(m)) * (a2 + double(m)) * (a3 + double(m)) /
                    ((b1 + double(m)) * (b2 + double(m)) * double(m + 1));
            sum += term;
        }
        cd v = pre * sum;
        int j = n - k;
        if (std::fabs(v.imag()) > 1e-10 * scale[j])
            throw ConditioningError("R_explicit: imaginary residue above threshold");
        c[j] = v.real();
    }
    return {n, c, Provenance::explicit_form};
}

inline double dini_c(const CoulombParams& p) {
    double l1 = p.ell() + 1.0, e = p.eta();
    return (1.0 + e * e / (l1 * l1)) / (4.0 * (2.0 * p.ell() + 3.0));
}

// (eta/(2(l+1)) + H x) R_{n,l} - c R_{n-1,l+1}; trailing zeros trimmed.
inline MonicPolynomial D_poly(const CoulombParams& p, int n, double H) {
    require_family(p);
    if (n < 1) throw ParameterError("D_poly: n must be >= 1");
    auto R = R_poly(p, n);
    auto S = R_poly(p.shifted(1.0), n - 1);
    double a = p.eta() / (2.0 * (p.ell() + 1.0)), c = dini_c(p);
    std::vector<double> d(n + 2, 0.0);
    for (int i = 0; i <= n; ++i) {
        d[i] += a * R.coeffs[i];
        d[i + 1] += H * R.coeffs[i];
    }
    for (int i = 0; i <= n - 1; ++i) d[i] -= c * S.coeffs[i];
    int deg = n + 1;
    while (deg > 0 && d[deg] == 0.0) --deg;
    d.resize(deg + 1);
    return {deg, d, Provenance::recurrence};
}

inline double D_value(const CoulombParams& p, int n, double H, double x) {
    double a = p.eta() / (2.0 * (p.ell() + 1.0));
    return (a + H * x) * R_value(p.ell(), p.eta(), n, x).first -
           dini_c(p) * R_value(p.ell() + 1.0, p.eta(), n - 1, x).first;
}

// Eigenvalues of the Jacobi matrix by Sturm-sequence bisection, ascending.
inline std::vector<double> poly_zeros_R(const CoulombParams& p, int n) {
    require_family(p);
    if (n < 0) throw ParameterError("poly_zeros_R: n must be >= 0");
    if (n == 0) return {};
    double l = p.ell(), e = p.eta();
    std::vector<double> d(n), b2(n, 0.0);
    for (int i = 0; i < n; ++i) {
        d[i] = alpha(l, e, i);
        if (i >= 1) b2[i] = beta(l, e, i);
    }
    // number of eigenvalues strictly below x
    auto count_below = [&](double x) {
        int c = 0;
        double q = d[0] - x;
        if (q < 0.0) ++c;
        for (int i = 1; i < n; ++i) {
            if (q == 0.0) q = 1e-300;
            q = d[i] - x - b2[i] / q;
            if (q < 0.0) ++c;
        }
        return c;
    };
    double rho = spectral_bound(p, n) * (1.0 + 1e-12) + 1e-300;
    std::vector<double> z(n);
    for (int k = 0; k < n; ++k) {
        double lo = -rho, hi = rho;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (count_below(mid) > k)
                hi = mid;
            else
                lo = mid;
        }
        z[k] = 0.5 * (lo + hi);
    }
    return z;
}

// Zeros of D_n(H; .) for H >= 0, one per gap of the R_n zeros plus the
// outer ones. A missing sign change is reported, never patched over.
inline std::vector<double> poly_zeros_D(const CoulombParams& p, int n, double H) {
    require_family(p);
    if (H < 0.0) throw ParameterError("poly_zeros_D: needs H >= 0");
    if (n < 1) throw ParameterError("poly_zeros_D: n must be >= 1");
    auto r = poly_zeros_R(p, n);
    auto f = [&](double x) { return D_value(p, n, H, x); };
    auto solve = [&](double a, double b) {
        double fa = f(a), fb = f(b);
        if (fa == 0.0) return a;
        if (fb == 0.0) return b;
        if ((fa > 0.0) == (fb > 0.0))
            throw BracketFailure("poly_zeros_D: no sign change where one zero is required");
        return coulomb::detail::brent(f, a, b, fa, fb, 1e-15 * std::max(1.0, std::fabs(a) + std::fabs(b)));
    };
    // search outward from an extreme zero of R_n until D changes sign
    auto outer = [&](double from, double dir) {
        double span = std::max(r.back() - r.front(), 1e-3);
        double step = span;
        double f0 = f(from);
        for (int i = 0; i < 200; ++i) {
            double x = from + dir * step;
            double fx = f(x);
            if ((fx > 0.0) != (f0 > 0.0) || fx == 0.0)
                return dir > 0 ? solve(from, x) : solve(x, from);
            step *= 2.0;
        }
        throw BracketFailure("poly_zeros_D: outer zero not found");
    };
    std::vector<double> z;
    double a = p.eta() / (p.ell() + 1.0);
    bool left = H > 0.0 || a < 0.0;
    bool right = H > 0.0 || a > 0.0;
    if (left) z.push_back(outer(r.front(), -1.0));
    for (int i = 0; i + 1 < n; ++i) z.push_back(solve(r[i], r[i + 1]));
    if (right) z.push_back(outer(r.back(), 1.0));
    return z;
}

// (2x)^n R_n(1/(2x)) via the scaled recurrence; tends to phi(x).
inline double scaled_R(double ell, double eta, int n, double x) {
    if (n == 0) return 1.0;
    double s0 = 1.0, s1 = 1.0 - 2.0 * x * alpha(ell, eta, 0);
    for (int k = 1; k < n; ++k) {
        double s2 = (1.0 - 2.0 * x * alpha(ell, eta, k)) * s1 - 4.0 * x * x * beta(ell, eta, k) * s0;
        s0 = s1;
        s1 = s2;
    }
    return s1;
}

inline constexpr double pade_max_x = 10.0;

inline double pade_limit_residual(const CoulombParams& p, int n, double x) {
    require_family(p);
    if (std::fabs(x) > pade_max_x) throw DomainError("pade_limit_residual: |x| > 10");
    return std::fabs(scaled_R(p.ell(), p.eta(), n, x) - phi_eval(p, x).value);
}

// (2x)^{n+1} D_n(H; 1/(2x)) against x phi' + H phi
inline double dini_scaled(const CoulombParams& p, int n, double H, double x) {
    double l = p.ell(), e = p.eta();
    double sn = scaled_R(l, e, n, x);
    double sm = n >= 1 ? scaled_R(l + 1.0, e, n - 1, x) : 0.0;
    return (e * x / (l + 1.0) + H) * sn - dini_c(p) * 4.0 * x * x * sm;
}

inline double dini_limit_residual(const CoulombParams& p, int n, double H, double x) {
    require_family(p);
    if (n < 1) throw ParameterError("dini_limit_residual: n must be >= 1");
    if (std::fabs(x) > pade_max_x) throw DomainError("dini_limit_residual: |x| > 10");
    if (x == 0.0) return std::fabs(dini_scaled(p, n, H, 0.0) - H);
    PhiValues v = phi_values(p, x);
    double target = x * static_cast<double>(v.d1) + H * static_cast<double>(v.f);
    return std::fabs(dini_scaled(p, n, H, x) - target);
}

struct WronskianR {
    double value = 0.0;         // W[R_{n,l}, R_{n+1,l-1}](x)
    double positive_sum = 0.0;  // sum_k c_k R_{n-k,l+k}(x)^2
    double rel_residual = 0.0;
};

inline WronskianR wronskian_R_positivity(const CoulombParams& p, int n, double x) {
    if (!(p.ell() > -0.5))
        throw RegimeError("wronskian_R_positivity needs ell > -1/2 " + p.str());
    if (p.ell() == 0.0) throw RegimeError("wronskian_R_positivity: R_{n+1,ell-1} undefined at ell = 0");
    if (n < 0) throw ParameterError("wronskian_R_positivity: n must be >= 0");
    double l = p.ell(), e = p.eta();
    auto [f, fp] = R_value(l, e, n, x);
    auto [g, gp] = R_value(l - 1.0, e, n + 1, x);
    WronskianR w;
    w.value = f * gp - fp * g;
    double c = 1.0, scale = 0.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) c *= beta(l + k - 1.0, e, 0);
        double r = R_value(l + k, e, n - k, x).first;
        w.positive_sum += c * r * r;
        scale += std::fabs(c * r * r);
    }
    double ws = std::fabs(f * gp) + std::fabs(fp * g);
    w.rel_residual = std::fabs(w.value - w.positive_sum) / std::max({scale, ws, 1e-300});
    return w;
}

// P_n(x) = R_n(x/2) / sqrt(zeta_n)
inline double normalized_value(const CoulombParams& p, int n, double x) {
    auto rc = recurrence_coeffs(p, n);
    return R_value(p.ell(), p.eta(), n, x / 2.0).first / std::sqrt(rc.zeta);
}

// Phase of the large-x expansion of F; zeros of F sit where it is a
// multiple of pi.
inline double asymptotic_phase(double ell, double eta, double x) {
    using cd = std::complex<double>;
    double sigma = log_gamma_complex({ell + 1.0, eta}).imag();
    double th = x - eta * std::log(2.0 * x) - ell * std::numbers::pi / 2.0 + sigma;
    cd a(-ell, eta), b(ell + 1.0, eta), z(0.0, 2.0 * x);
    cd t(1.0, 0.0), s(1.0, 0.0);
    double best = 1.0;
    for (int k = 0; k < 200; ++k) {
        cd nt = t * (a + double(k)) * (b + double(k)) / (double(k + 1) * z);
        if (std::abs(nt) >= best) break;
        t = nt;
        best = std::abs(t);
        s += t;
        if (best < 1e-17) break;
    }
    return th + std::arg(s);
}

// N positive zeros of varphi: refined ones inside the evaluation domain,
// continued by the asymptotic phase beyond it.
inline std::vector<double> extended_positive_zeros(const CoulombParams& p, int N) {
    auto zs = positive_zeros(p, Target::varphi(), N);
    std::vector<double> z = zs.zeros;
    if (static_cast<int>(z.size()) >= N) return z;
    if (z.size() < 3) throw ConvergenceError("too few zeros in the domain to continue asymptotically");
    const double pi = std::numbers::pi;
    double l = p.ell(), e = p.eta();
    double m0 = std::round(asymptotic_phase(l, e, z.back()) / pi);
    for (int i = 1; i <= 3; ++i) {
        double zi = z[z.size() - i];
        double dev = asymptotic_phase(l, e, zi) / pi - (m0 - (i - 1));
        if (std::fabs(dev) > 0.05)
            throw ConvergenceError("asymptotic phase does not match the computed zeros");
    }
    double x = z.back();
    for (double m = m0 + 1.0; static_cast<int>(z.size()) < N; m += 1.0) {
        x += pi;
        for (int it = 0; it < 50; ++it) {
            double dx = (m * pi - asymptotic_phase(l, e, x)) / (1.0 - e / x);
            x += dx;
            if (std::fabs(dx) < 1e-14 * x) break;
        }
        z.push_back(x);
    }
    return z;
}

struct MittagLefflerResidual {
    double r1 = 0.0;
    double r2 = 0.0;
};

// Partial-fraction identities for x varphi_{l+1}/varphi_l and phi'/phi,
// truncated to N zeros on each half-line.
inline MittagLefflerResidual mittag_leffler_residual(const CoulombParams& p, double x, int N) {
    require_family(p);
    if (p.eta() == 0.0) throw ParameterError("mittag_leffler_residual needs eta != 0");
    if (N < 1) throw ParameterError("mittag_leffler_residual: N must be >= 1");
    auto pos = extended_positive_zeros(p, N);
    auto neg = extended_positive_zeros(p.reflected(), N);
    std::vector<double> zk = pos;
    for (double v : neg) zk.push_back(-v);
    double s1 = 0.0, s2 = 0.0;
    for (double xk : zk) {
        if (std::fabs(x - xk) < 1e-6) throw PoleError("mittag_leffler_residual: x at a zero of phi");
        s1 += x / (xk * (xk - x));
        s2 += x / (xk * (x - xk));
    }
    double l1 = p.ell() + 1.0, e = p.eta();
    auto v0 = detail::varphi_values(p, x);
    auto v1 = detail::varphi_values(p.shifted(1.0), x);
    PhiValues ph = phi_values(p, x);
    MittagLefflerResidual r;
    r.r1 = std::fabs(x * v1.f / v0.f - l1 / (2.0 * (l1 * l1 + e * e)) * s1);
    r.r2 = std::fabs(static_cast<double>(ph.d1 / ph.f) - e / l1 - s2);
    return r;
}

}  // namespace coulomb::ortho
