#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "check_report.hpp"
#include "errors.hpp"
#include "ortho_poly.hpp"
#include "params.hpp"
#include "special.hpp"
#include "zeros.hpp"

namespace coulomb::verify {

struct XSpec {
    double min = 1e-3;
    double max = 50.0;
    int points = 600;
    bool log = true;
};

struct Grid {
    std::vector<double> ell;
    std::vector<double> eta;
    XSpec x;

    std::vector<double> positive_x() const {
        std::vector<double> out;
        out.reserve(x.points);
        for (int i = 1; i <= x.points; ++i) {
            double t = double(i) / x.points;
            out.push_back(x.log ? x.min * std::pow(x.max / x.min, t) : x.min + (x.max - x.min) * t);
        }
        out.back() = x.max;
        return out;
    }

    // positive points plus their mirror images
    std::vector<double> both_x() const {
        auto p = positive_x();
        std::vector<double> out;
        out.reserve(2 * p.size());
        for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(-*it);
        out.insert(out.end(), p.begin(), p.end());
        return out;
    }

    std::string spec() const {
        std::ostringstream s;
        s << "ell{";
        for (size_t i = 0; i < ell.size(); ++i) s << (i ? "," : "") << ell[i];
        s << "} eta{";
        for (size_t i = 0; i < eta.size(); ++i) s << (i ? "," : "") << eta[i];
        s << "} x " << x.points << (x.log ? " log" : " lin") << " (" << x.min << ", " << x.max << "]";
        return s.str();
    }
};

inline Grid default_grid() {
    return {{-1.7, -1.4, -0.6, -1.0 / 3.0, 0.0, 0.2, 1.0, 2.5},
            {-2.0, -1.0 / 3.0, 1.0 / 3.0, 0.5, 3.0},
            {}};
}

namespace detail {

using coulomb::detail::dd;

inline bool laguerre_class(double l, double e) { return l > -1.5 && !(l == -1.0 && e != 0.0); }

inline CheckReport make(const std::string& id, const std::string& spec, bool strict, double tol) {
    CheckReport r;
    r.claim_id = id;
    r.grid_spec = spec;
    r.strict = strict;
    r.tolerance = tol;
    return r;
}

// residual claims: margin = threshold - residual, non-strict, zero tolerance
inline CheckReport make_residual(const std::string& id, const std::string& spec) {
    return make(id, spec, false, 0.0);
}

// An evaluation that throws cannot decide the claim at that point.
inline void eval_failure(CheckReport& r, GridPoint at, const Error& e) {
    r.add(-INFINITY, at, INFINITY);
    if (r.note.find(e.name()) == std::string::npos)
        r.note += (r.note.empty() ? "" : "; ") + std::string(e.name()) + ": " + e.what();
}

inline void absorb(CheckReport& dst, const CheckReport& src, double ell, double eta) {
    GridPoint at{ell, eta, src.worst_point.x};
    if (src.points == 0) return;
    dst.add(src.worst_margin, at, src.worst_err);
    dst.points += src.points - 1;
    if (!src.note.empty() && dst.note.find(src.note) == std::string::npos)
        dst.note += (dst.note.empty() ? "" : "; ") + src.note;
}

struct LaguerreValue {
    double value, err, scale;
};

inline LaguerreValue laguerre_parts(const PhiValues& v, double l1, double eta, double x) {
    dd xd(x);
    dd coef = (xd * xd - dd(2.0 * eta) * xd - dd(l1) * dd(l1)) / (xd * xd);
    dd w = v.d1 + v.f * dd(l1) / xd;
    dd L = coef * v.f * v.f + w * w;
    double c = std::fabs(static_cast<double>(coef)), f = std::fabs(static_cast<double>(v.f));
    double wa = std::fabs(static_cast<double>(w));
    double we = v.e1 + std::fabs(l1 / x) * v.e0;
    double scale = c * f * f + wa * wa;
    double err = 2.0 * c * f * v.e0 + c * v.e0 * v.e0 + 2.0 * wa * we + we * we + 1e-30 * scale;
    return {static_cast<double>(L), err, scale};
}

// Strict alternation of two point sets after merging. With trim, both are
// cut to the window covered by each list.
inline void add_alternation(CheckReport& r, std::vector<double> a, std::vector<double> b, double ell,
                            double eta, bool trim, double resolution = 0.0) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a.empty() || b.empty()) {
        r.add(-INFINITY, {ell, eta, NAN}, INFINITY);
        r.note = "empty zero list";
        return;
    }
    if (trim) {
        double lo = std::max(a.front(), b.front()), hi = std::min(a.back(), b.back());
        auto cut = [&](std::vector<double>& v) {
            std::vector<double> o;
            for (double z : v)
                if (z >= lo && z <= hi) o.push_back(z);
            v = std::move(o);
        };
        cut(a);
        cut(b);
    }
    std::vector<std::pair<double, int>> m;
    for (double z : a) m.push_back({z, 0});
    for (double z : b) m.push_back({z, 1});
    std::sort(m.begin(), m.end());
    if (m.size() < 2) {
        r.add(-INFINITY, {ell, eta, NAN}, INFINITY);
        r.note = "fewer than two zeros in the common window";
        return;
    }
    for (size_t k = 1; k < m.size(); ++k) {
        GridPoint at{ell, eta, m[k].first};
        double sc = std::max({1.0, std::fabs(m[k].first), std::fabs(m[k - 1].first)});
        double gap = m[k].first - m[k - 1].first;
        if (m[k].second == m[k - 1].second) {
            // two neighbours from one set closer than the resolution may be
            // an unresolved swap
            r.add(gap <= resolution ? -gap / sc : -1.0, at, resolution / sc);
            continue;
        }
        r.add(gap / sc, at, resolution / sc);
    }
}

inline std::vector<double> all_zeros(const CoulombParams& p, const Target& t, int count) {
    auto pos = positive_zeros(p, t, count);
    auto neg = negative_zeros(p, t, count);
    std::vector<double> out = neg.zeros;
    out.insert(out.end(), pos.zeros.begin(), pos.zeros.end());
    return out;
}

inline double bound_radius(double l, double e) { return std::sqrt((l + 1.0) * (l + 1.0) + e * e); }

}  // namespace detail

// (phi')^2 - phi phi'' >= 0 on both half-lines
inline CheckReport check_laguerre(const Grid& g) {
    auto r = detail::make("laguerre-nonneg", g.spec(), false, 1e-12);
    auto xs = g.both_x();
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!detail::laguerre_class(l, e)) continue;
            CoulombParams p(l, e);
            for (double x : xs) {
                try {
                    auto v = phi_values(p, x);
                    auto L = detail::laguerre_parts(v, l + 1.0, e, x);
                    double s = std::max(L.scale, 1e-300);
                    r.add(L.value / s, {l, e, x}, L.err / s);
                } catch (const Error& ex) {
                    detail::eval_failure(r, {l, e, x}, ex);
                }
            }
        }
    return r.finish();
}

// Two-sided bound on the Laguerre expression for x > 0, and the size of
// the expression against the upper bound at x = 45.
inline std::vector<CheckReport> check_laguerre_sandwich(const Grid& g) {
    auto r = detail::make("laguerre-sandwich", g.spec(), true, 1e-13);
    auto q = detail::make("laguerre-sandwich-ratio", g.spec() + " at x=45", false, 0.0);
    auto xs = g.positive_x();
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!detail::laguerre_class(l, e)) continue;
            CoulombParams p(l, e);
            double s = detail::bound_radius(l, e);
            double lc;
            try {
                lc = log_abs_gamow(p);
            } catch (const Error& ex) {
                detail::eval_failure(r, {l, e, NAN}, ex);
                continue;
            }
            auto inv_scale = [&](double x) { return std::exp(-2.0 * lc - (2.0 * l + 3.0) * std::log(x)); };
            for (double x : xs) {
                try {
                    auto L = detail::laguerre_parts(phi_values(p, x), l + 1.0, e, x);
                    double k = inv_scale(x);
                    double lo = (x - e - s) * k, hi = (x - e + s) * k;
                    double S = std::max({std::fabs(L.value), std::fabs(lo), std::fabs(hi)});
                    double be = coulomb::detail::gamma_rel_err * (std::fabs(lo) + std::fabs(hi));
                    r.add((L.value - lo) / S, {l, e, x}, (L.err + be) / S);
                    r.add((hi - L.value) / S, {l, e, x}, (L.err + be) / S);
                } catch (const Error& ex) {
                    detail::eval_failure(r, {l, e, x}, ex);
                }
            }
            try {
                double x = 45.0;
                auto L = detail::laguerre_parts(phi_values(p, x), l + 1.0, e, x);
                double ratio = L.value / ((x - e + s) * inv_scale(x));
                q.add(0.5 - std::fabs(ratio - 1.0), {l, e, x});
            } catch (const Error& ex) {
                detail::eval_failure(q, {l, e, 45.0}, ex);
            }
        }
    return {r.finish(), q.finish()};
}

// Uniform bounds on F^2, F'^2 past the turning region and the reversed
// bounds at the first zeros of F' and F.
inline std::vector<CheckReport> check_uniform_bounds(const Grid& g, int zeros = 10) {
    auto uf = detail::make("F-upper-bound", g.spec(), true, 1e-13);
    auto ud = detail::make("Fprime-upper-bound", g.spec(), true, 1e-13);
    auto lf = detail::make("F-lower-at-Fprime-zeros", g.spec() + " first " + std::to_string(zeros), true, 1e-13);
    auto ld = detail::make("Fprime-lower-at-F-zeros", g.spec() + " first " + std::to_string(zeros), true, 1e-13);
    auto xs = g.positive_x();
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!detail::laguerre_class(l, e)) continue;
            CoulombParams p(l, e);
            double s = detail::bound_radius(l, e);
            for (double x : xs) {
                if (!(x > e + s)) continue;
                try {
                    auto F = F_eval(p, x);
                    auto D = F_derivative(p, x);
                    double bf = x / (x - e - s), bd = 1.0 + (s - e) / x;
                    uf.add((bf - F.value * F.value) / bf, {l, e, x}, 2.0 * std::fabs(F.value) * F.abs_err_bound / bf);
                    ud.add((bd - D.value * D.value) / bd, {l, e, x}, 2.0 * std::fabs(D.value) * D.abs_err_bound / bd);
                } catch (const Error& ex) {
                    detail::eval_failure(uf, {l, e, x}, ex);
                }
            }
            try {
                for (double b : positive_zeros(p, Target::f_prime(), zeros).zeros) {
                    auto F = F_eval(p, b);
                    double lo = b / (b - e + s);
                    // error of F at b includes the zero's location error
                    double err = 2.0 * std::fabs(F.value) * F.abs_err_bound / lo;
                    lf.add((F.value * F.value - lo) / lo, {l, e, b}, err);
                }
                for (double a : positive_zeros(p, Target::varphi(), zeros).zeros) {
                    auto D = F_derivative(p, a);
                    double lo = 1.0 - (s + e) / a;
                    double S = std::max(std::fabs(lo), D.value * D.value);
                    ld.add((D.value * D.value - lo) / S, {l, e, a}, 2.0 * std::fabs(D.value) * D.abs_err_bound / S);
                }
            } catch (const Error& ex) {
                detail::eval_failure(lf, {l, e, NAN}, ex);
            }
        }
    return {uf.finish(), ud.finish(), lf.finish(), ld.finish()};
}

// Bessel closed forms J_nu(x)^2 for nu = -1/2 .. 5/2
inline double bessel_half_sq(int twice_nu, double x) {
    double s = std::sin(x), c = std::cos(x), k = 2.0 / (std::numbers::pi * x);
    double v;
    switch (twice_nu) {
        case -1: v = c; break;
        case 1: v = s; break;
        case 3: v = s / x - c; break;
        default: v = (3.0 / (x * x) - 1.0) * s - 3.0 * c / x; break;
    }
    return k * v * v;
}

// The three companion bounds: ell = -1, eta = 0 (Bessel), negative axis.
inline std::vector<CheckReport> check_special_bounds(const Grid& g) {
    auto ri = detail::make("F-minus1-bound", g.spec(), true, 1e-13);
    auto rb = detail::make("bessel-bound", "nu{-1/2,1/2,3/2,5/2} x " + g.spec(), false, 1e-13);
    auto rn = detail::make("negative-axis-bound", g.spec(), true, 1e-13);
    auto xs = g.positive_x();
    for (double e : g.eta) {
        if (e == 0.0) continue;
        CoulombParams p0(0.0, e);
        double s = std::sqrt(1.0 + e * e);
        for (double x : xs) {
            if (!(x > e + s)) continue;
            try {
                auto F = F_eval(p0, x);
                double v = x * x * F.value * F.value / 4.0;
                double b = x * x * x / (4.0 * (x - e - s));
                ri.add((b - v) / b, {-1.0, e, x}, x * x * std::fabs(F.value) * F.abs_err_bound / (2.0 * b));
            } catch (const Error& ex) {
                detail::eval_failure(ri, {-1.0, e, x}, ex);
            }
        }
    }
    for (int tn : {-1, 1, 3, 5}) {
        double nu = tn / 2.0;
        for (double x : xs) {
            double d = std::fabs(nu - 0.5);
            if (!(x > d)) continue;
            double b = 2.0 / (std::numbers::pi * (x - d));
            rb.add((b - bessel_half_sq(tn, x)) / b, {nu - 0.5, 0.0, x});
        }
    }
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!detail::laguerre_class(l, e) || l <= -1.0) continue;
            CoulombParams p(l, e);
            double s = detail::bound_radius(l, e);
            for (double x : xs) {
                if (!(x > -e + s)) continue;
                try {
                    auto v = varphi_eval(p, -x);
                    // |F(-x)|^2 = C^2 x^{2l+2} phi(-x)^2, kept in logs
                    double lp = std::log(std::fabs(phi_eval(p, -x).value));
                    double lv = 2.0 * log_abs_gamow(p) + (2.0 * l + 2.0) * std::log(x) + 2.0 * lp;
                    double lb = -2.0 * std::numbers::pi * e + std::log(x / (x + e - s));
                    double m = 1.0 - std::exp(lv - lb);
                    double rel = 2.0 * v.abs_err_bound / std::max(std::fabs(v.value), 1e-300) + 4e-14;
                    rn.add(m, {l, e, x}, rel * std::exp(lv - lb));
                } catch (const Error& ex) {
                    detail::eval_failure(rn, {l, e, x}, ex);
                }
            }
        }
    return {ri.finish(), rb.finish(), rn.finish()};
}

// Positive zeros of F' (and of F when ell > -1) lie past eta + sqrt(...).
inline std::vector<CheckReport> check_zero_lower_bounds(const Grid& g, int zeros = 10) {
    auto rd = detail::make("Fprime-zero-lower-bound", g.spec(), true, 1e-13);
    auto rf = detail::make("F-zero-lower-bound", g.spec(), true, 1e-13);
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!detail::laguerre_class(l, e)) continue;
            CoulombParams p(l, e);
            double b = zero_lower_bound(p);
            try {
                for (double z : positive_zeros(p, Target::f_prime(), zeros).zeros)
                    rd.add((z - b) / z, {l, e, z}, 1e-11);
                if (l > -1.0 && e != 0.0)
                    for (double z : positive_zeros(p, Target::varphi(), zeros).zeros)
                        rf.add((z - b) / z, {l, e, z}, 1e-11);
            } catch (const Error& ex) {
                detail::eval_failure(rd, {l, e, NAN}, ex);
            }
        }
    return {rd.finish(), rf.finish()};
}

using ParamList = std::vector<std::pair<double, double>>;

inline ParamList separation_params(const Grid& g) {
    ParamList v{{-1.0 / 3.0, -1.0 / 3.0}, {0.0, 1.0}, {2.0, -2.0}, {2.0, 0.0}};
    for (double l : g.ell)
        for (double e : g.eta)
            if (detail::laguerre_class(l, e) && e != 0.0) v.push_back({l, e});
    return v;
}

inline ParamList low_ell_params(const Grid& g) {
    ParamList v{{-5.0 / 3.0, 1.0 / 3.0}, {-1.7, 0.5}};
    for (double l : g.ell)
        for (double e : g.eta)
            if (l <= -1.5 && e != 0.0) v.push_back({l, e});
    return v;
}

namespace detail {

// zeros of varphi_l and varphi_{l+1} on each half-line, given pattern
inline CheckReport neighbour_pattern(const std::string& id, const ParamList& ps, int count,
                                     InterlacePattern pat) {
    std::ostringstream spec;
    spec << ps.size() << " (ell, eta) pairs, " << count << " zeros per half-line";
    auto r = make(id, spec.str(), true, 1e-13);
    for (auto [l, e] : ps) {
        CoulombParams p(l, e), q = p.shifted(1.0);
        try {
            for (bool neg : {false, true}) {
                auto a = positive_zeros(neg ? p.reflected() : p, Target::varphi(), count).zeros;
                auto b = positive_zeros(neg ? q.reflected() : q, Target::varphi(), count).zeros;
                size_t n = std::min(a.size(), b.size());
                a.resize(n);
                b.resize(n);
                auto sub = interlace_check(a, b, pat, id);
                if (neg) sub.worst_point.x = -sub.worst_point.x;
                absorb(r, sub, l, e);
            }
        } catch (const Error& ex) {
            eval_failure(r, {l, e, NAN}, ex);
        }
    }
    return r.finish();
}

}  // namespace detail

// 0 < rho_{l,1} < rho_{l+1,1} < rho_{l,2} < ... in |x| on both half-lines
inline CheckReport check_separation(const ParamList& ps, int count = 10) {
    return detail::neighbour_pattern("separation-ell-ell1", ps, count, InterlacePattern::a_first);
}

// 0 < rho_{l+1,1} < rho_{l,1} < ... for ell <= -3/2
inline CheckReport check_interlace_low_ell(const ParamList& ps, int count = 10) {
    return detail::neighbour_pattern("interlace-low-ell", ps, count, InterlacePattern::b_first);
}

// h > 0 off the origin, the Wronskian identity of U_l, V_{l+1} and the
// first-order relations behind it.
inline std::vector<CheckReport> check_wronskian(const Grid& g) {
    auto rh = detail::make("wronskian-h-positive", g.spec(), true, 1e-13);
    auto rw = detail::make_residual("wronskian-UV-identity", g.spec() + " residual <= 1e-9");
    auto rd = detail::make_residual("wronskian-UV-derivatives", g.spec() + " residual <= 1e-9");
    const double thr = 1e-9;
    auto xs = g.both_x();
    for (double l : g.ell)
        for (double e : g.eta) {
            if (l == -1.0) continue;
            CoulombParams p(l, e), q = p.shifted(1.0);
            double l1 = l + 1.0, s2 = l1 * l1 + e * e;
            for (double x : xs) {
                try {
                    auto v0 = coulomb::detail::varphi_values(p, x);
                    auto v1 = coulomb::detail::varphi_values(q, x);
                    if (v0.surrogate || v1.surrogate) continue;
                    double a = v0.f * v0.f, b = 4.0 * s2 * x * x * v1.f * v1.f;
                    double den = a + b + x * x * v0.d1 * v0.d1;
                    double err = 2.0 * std::fabs(v0.f) * v0.e0 + 8.0 * s2 * x * x * std::fabs(v1.f) * v1.e0;
                    rh.add((a + b) / den, {l, e, x}, err / den);
                } catch (const Error& ex) {
                    detail::eval_failure(rh, {l, e, x}, ex);
                }
                if (!(x > 0.0) || !p.regular() || !q.regular()) continue;
                try {
                    // common factors x^{2l+2} and exp(+-eta x/(l+1)) removed
                    auto f0 = phi_values(p, x), f1 = phi_values(q, x);
                    double c0 = gamow_constant(p), c1 = gamow_constant(q);
                    double a = e / l1, s = std::sqrt(s2) / l1;
                    double p0 = static_cast<double>(f0.f), d0 = static_cast<double>(f0.d1);
                    double p1 = static_cast<double>(f1.f), d1 = static_cast<double>(f1.d1);
                    double U = c0 * p0, Up = c0 * (d0 - a * p0);
                    double Vx = c1 * x * p1;  // V / x^{2l+2}
                    double Vp = c1 * ((2.0 * l + 3.0) * p1 + x * (d1 + a * p1));
                    double up_rhs = -s * c1 * x * p1, vp_rhs = s * c0 * p0;
                    double ru = std::fabs(Up - up_rhs) /
                                std::max({std::fabs(c0 * d0), std::fabs(c0 * a * p0), std::fabs(up_rhs), 1e-300});
                    double sv = std::max({std::fabs(c1 * (2.0 * l + 3.0) * p1), std::fabs(c1 * x * d1),
                                          std::fabs(c1 * x * a * p1), std::fabs(vp_rhs), 1e-300});
                    double rv = std::fabs(Vp - vp_rhs) / sv;
                    rd.add(thr - std::max(ru, rv), {l, e, x});
                    double W = U * Vp - Up * Vx;
                    double rhs = s * (c0 * c0 * p0 * p0 + c1 * c1 * x * x * p1 * p1);
                    double sw = std::max({std::fabs(U * Vp), std::fabs(Up * Vx), std::fabs(rhs), 1e-300});
                    rw.add(thr - std::fabs(W - rhs) / sw, {l, e, x});
                } catch (const Error& ex) {
                    detail::eval_failure(rw, {l, e, x}, ex);
                }
            }
        }
    return {rh.finish(), rw.finish(), rd.finish()};
}

struct MonotoneConfig {
    double ell_axis_eta = -0.2;
    double ell_from = -0.4, ell_to = 3.0;
    int ell_steps = 68;
    double eta_axis_ell = 0.2;
    double eta_from = -3.0, eta_to = 3.0;
    int eta_steps = 60;
    std::vector<int> ks{1, 2, 3};
    double chain_ell = 0.2, chain_L = 0.9;
    std::vector<double> chain_eta{-2.0, -1.0 / 3.0, 1.0 / 3.0, 0.5, 3.0};
    int chain_count = 10;
};

namespace detail {

inline void add_trajectory(CheckReport& r, const Trajectory& tr, double fixed) {
    double h = tr.grid[1] - tr.grid[0];
    for (size_t i = 1; i < tr.values.size(); ++i) {
        double s = tr.grid[i];
        GridPoint at = tr.axis == Axis::ell ? GridPoint{s, fixed, tr.values[i]} : GridPoint{fixed, s, tr.values[i]};
        r.add((tr.values[i] - tr.values[i - 1]) / h, at, 2e-11 / h);
        if (!tr.step_ok[i]) {
            r.add(-INFINITY, at, INFINITY);
            r.note = "continuity bound exceeded";
        }
    }
}

}  // namespace detail

// Zero trajectories in ell and eta, the mirrored negative zeros, and the
// chain pattern for two ell values less than one apart.
inline std::vector<CheckReport> check_monotonicity(const MonotoneConfig& c = {}) {
    std::ostringstream se, st;
    se << "ell in [" << c.ell_from << ", " << c.ell_to << "] steps " << c.ell_steps << " eta " << c.ell_axis_eta;
    st << "eta in [" << c.eta_from << ", " << c.eta_to << "] steps " << c.eta_steps << " ell " << c.eta_axis_ell;
    auto rl = detail::make("zero-monotone-ell", se.str(), true, 1e-13);
    auto re = detail::make("zero-monotone-eta", st.str(), true, 1e-13);
    auto rn = detail::make("negative-zero-monotone-eta", st.str(), true, 1e-13);
    auto rc = detail::make("zero-chain-ell-L", "ell " + std::to_string(c.chain_ell) + ", L " + std::to_string(c.chain_L),
                           true, 1e-13);
    for (int k : c.ks) {
        try {
            auto tr = trace_zero(CoulombParams(c.ell_from, c.ell_axis_eta), Axis::ell, c.ell_from, c.ell_to,
                                 c.ell_steps, k);
            detail::add_trajectory(rl, tr, c.ell_axis_eta);
        } catch (const Error& ex) {
            detail::eval_failure(rl, {NAN, c.ell_axis_eta, NAN}, ex);
        }
        try {
            auto tr = trace_zero(CoulombParams(c.eta_axis_ell, c.eta_from), Axis::eta, c.eta_from, c.eta_to,
                                 c.eta_steps, k);
            detail::add_trajectory(re, tr, c.eta_axis_ell);
        } catch (const Error& ex) {
            detail::eval_failure(re, {c.eta_axis_ell, NAN, NAN}, ex);
        }
    }
    int kmax = *std::max_element(c.ks.begin(), c.ks.end());
    double h = (c.eta_to - c.eta_from) / c.eta_steps;
    std::vector<std::vector<double>> mags;
    for (int i = 0; i <= c.eta_steps; ++i) {
        double e = i == c.eta_steps ? c.eta_to : c.eta_from + h * i;
        try {
            auto z = negative_zeros(CoulombParams(c.eta_axis_ell, e), Target::varphi(), kmax).zeros;
            if (static_cast<int>(z.size()) < kmax) throw LossOfZeroError("negative zero left the domain");
            std::vector<double> m;
            for (int k = 1; k <= kmax; ++k) m.push_back(-z[z.size() - k]);
            if (!mags.empty())
                for (int k : c.ks)
                    rn.add((mags.back()[k - 1] - m[k - 1]) / h, {c.eta_axis_ell, e, -m[k - 1]}, 2e-11 / h);
            mags.push_back(m);
        } catch (const Error& ex) {
            detail::eval_failure(rn, {c.eta_axis_ell, e, NAN}, ex);
            mags.clear();
        }
    }
    for (double e : c.chain_eta) {
        try {
            auto a = positive_zeros(CoulombParams(c.chain_ell, e), Target::varphi(), c.chain_count).zeros;
            auto b = positive_zeros(CoulombParams(c.chain_L, e), Target::varphi(), c.chain_count).zeros;
            size_t n = std::min(a.size(), b.size());
            a.resize(n);
            b.resize(n);
            detail::absorb(rc, interlace_check(a, b, InterlacePattern::a_first), c.chain_ell, e);
        } catch (const Error& ex) {
            detail::eval_failure(rc, {c.chain_ell, e, NAN}, ex);
        }
    }
    return {rl.finish(), re.finish(), rn.finish(), rc.finish()};
}

// Alternation of x phi with x phi' + H phi (H > 0) and of phi with phi' on
// the real line; the first zero of F' precedes the first zero of F.
inline std::vector<CheckReport> check_dini_interlacing(const Grid& g, std::vector<double> Hs = {0.5, 1.0, 3.0},
                                                       int count = 10) {
    std::string spec = g.spec() + " " + std::to_string(count) + " zeros per half-line";
    auto rdn = detail::make("dini-interlace", spec + " H{0.5,1,3}", true, 1e-13);
    auto rdv = detail::make("derivative-interlace", spec, true, 1e-13);
    auto rf = detail::make("first-Fprime-zero-first", g.spec(), true, 1e-13);
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!detail::laguerre_class(l, e) || e == 0.0) continue;
            CoulombParams p(l, e);
            try {
                auto a = detail::all_zeros(p, Target::varphi(), count);
                auto d = detail::all_zeros(p, Target::varphi_prime(), count);
                detail::add_alternation(rdv, a, d, l, e, true);
                a.push_back(0.0);
                for (double H : Hs) {
                    auto b = detail::all_zeros(p, Target::dini(H), count);
                    detail::add_alternation(rdn, a, b, l, e, true);
                }
                if (l > -1.0) {
                    double z = positive_zeros(p, Target::varphi(), 1).zeros.at(0);
                    double w = positive_zeros(p, Target::f_prime(), 1).zeros.at(0);
                    rf.add((z - w) / z, {l, e, w}, 1e-11);
                }
            } catch (const Error& ex) {
                detail::eval_failure(rdn, {l, e, NAN}, ex);
            }
        }
    return {rdn.finish(), rdv.finish(), rf.finish()};
}

struct CommonZeroConfig {
    double eta = 0.5;
    double ell = -0.4;
    double window = 15.0;
    double rho_star_expected = -1.92;
    double ell_star_eta = 1.0 / 3.0;
    double ell_star_lo = -0.103, ell_star_hi = -0.102;
};

// Three-term relation between phi_l, phi_{l+1}, phi_{l+2} and the
// Wronskian of phi_l with q phi_{l+2}, both relative to their terms.
inline std::vector<CheckReport> check_three_term(const Grid& g) {
    auto rr = detail::make_residual("three-term-residual", g.spec() + " residual <= 1e-9");
    auto rw = detail::make_residual("shifted-wronskian-identity", g.spec() + " residual <= 1e-9");
    const double thr = 1e-9;
    auto xs = g.both_x();
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!(l > -1.0)) continue;
            CoulombParams p0(l, e), p1 = p0.shifted(1.0), p2 = p0.shifted(2.0);
            if (!p0.regular() || !p1.regular() || !p2.regular()) continue;
            double l1 = l + 1.0, l2 = l + 2.0;
            double kap = (l2 * l2 + e * e) / (l2 * l2 * (2.0 * l + 3.0) * (2.0 * l + 5.0));
            for (double x : xs) {
                try {
                    auto a = phi_values(p0, x), b = phi_values(p1, x), c = phi_values(p2, x);
                    double f0 = static_cast<double>(a.f), g0 = static_cast<double>(a.d1);
                    double f1 = static_cast<double>(b.f), g1 = static_cast<double>(b.d1);
                    double f2 = static_cast<double>(c.f), g2 = static_cast<double>(c.d1);
                    double m = 1.0 + e * x / (l1 * l2);
                    double t1 = m * f1, t2 = kap * x * x * f2;
                    double s = std::max({std::fabs(f0), std::fabs(t1), std::fabs(t2), 1e-300});
                    rr.add(thr - std::fabs(f0 - t1 + t2) / s, {l, e, x});
                    double q = x / 2.0 + e * x * x / (2.0 * l1 * l2), qp = 0.5 + e * x / (l1 * l2);
                    double lhs1 = f0 * (qp * f2 + q * g2), lhs2 = g0 * q * f2;
                    double w12a = f1 * (f2 + x * g2), w12b = g1 * x * f2;
                    double k2 = 2.0 * q * q / (x * x);
                    double rhs1 = k2 * (w12a - w12b), rhs2 = kap / 2.0 * x * x * f2 * f2;
                    double sw = std::max({std::fabs(f0 * qp * f2), std::fabs(f0 * q * g2), std::fabs(lhs2),
                                          std::fabs(k2 * w12a), std::fabs(k2 * w12b), std::fabs(rhs2), 1e-300});
                    rw.add(thr - std::fabs(lhs1 - lhs2 - rhs1 - rhs2) / sw, {l, e, x});
                } catch (const Error& ex) {
                    detail::eval_failure(rr, {l, e, x}, ex);
                }
            }
        }
    return {rr.finish(), rw.finish()};
}

// Interlacing of phi_l with {0, rho*} and the zeros of phi_{l+2} on a
// window, rho* itself, and the ell where rho* becomes a common zero.
inline std::vector<CheckReport> check_common_zero(const CommonZeroConfig& c = {}) {
    std::ostringstream sp;
    sp << "ell " << c.ell << " eta " << c.eta << " x in [" << -c.window << ", " << c.window << "]";
    auto ri = detail::make("common-zero-interlace", sp.str(), true, 1e-13);
    auto rv = detail::make("rho-star-value", sp.str(), false, 1e-15);
    auto rz = detail::make("rho-star-not-zero", sp.str(), true, 1e-13);
    auto rs = detail::make("ell-star-bracket", "eta " + std::to_string(c.ell_star_eta), true, 0.0);
    auto rc = detail::make_residual("ell-star-common-zero", "eta " + std::to_string(c.ell_star_eta) + " residual <= 1e-6");
    CoulombParams p(c.ell, c.eta), p2 = p.shifted(2.0);
    double rho = common_zero_candidate(p);
    rv.add(-std::fabs(rho - c.rho_star_expected), {c.ell, c.eta, rho});
    try {
        auto in_window = [&](const CoulombParams& q) {
            int n = static_cast<int>(c.window) + 8;
            std::vector<double> out;
            for (double z : detail::all_zeros(q, Target::varphi(), n))
                if (std::fabs(z) <= c.window) out.push_back(z);
            return out;
        };
        auto a = in_window(p);
        auto b = in_window(p2);
        b.push_back(0.0);
        b.push_back(rho);
        detail::add_alternation(ri, a, b, c.ell, c.eta, false);
        auto v = coulomb::detail::varphi_values(p, rho);
        double den = std::fabs(v.f) + std::fabs(v.d1);
        rz.add(std::fabs(v.f) / den, {c.ell, c.eta, rho}, v.e0 / den);
    } catch (const Error& ex) {
        detail::eval_failure(ri, {c.ell, c.eta, NAN}, ex);
    }
    try {
        auto st = find_ell_star(c.ell_star_eta);
        rs.add(std::min(st.lo - c.ell_star_lo, c.ell_star_hi - st.hi), {st.value, c.ell_star_eta, NAN});
        std::ostringstream n;
        n.precision(17);
        n << "ell* = " << st.value << " in [" << st.lo << ", " << st.hi << "]";
        rs.note = n.str();
        CoulombParams q(st.value, c.ell_star_eta);
        double x = common_zero_candidate(q);
        auto w = coulomb::detail::varphi_values(q.shifted(2.0), x);
        rc.add(1e-6 - std::fabs(w.f) / (std::fabs(w.f) + std::fabs(w.d1)), {st.value + 2.0, c.ell_star_eta, x});
    } catch (const Error& ex) {
        detail::eval_failure(rs, {NAN, c.ell_star_eta, NAN}, ex);
    }
    return {ri.finish(), rv.finish(), rz.finish(), rs.finish(), rc.finish()};
}

// ODE, contiguous relations, and the polynomial Wronskian sum.
inline std::vector<CheckReport> check_identities(const Grid& g) {
    const double thr = 1e-8;
    auto ro = detail::make_residual("ode-residual", g.spec() + " residual <= 1e-8");
    auto rdn = detail::make_residual("recurrence-down", g.spec() + " residual <= 1e-8");
    auto rup = detail::make_residual("recurrence-up", g.spec() + " residual <= 1e-8");
    auto rmx = detail::make_residual("recurrence-mixed", g.spec() + " residual <= 1e-8");
    std::string pspec = "ell > -1/2, ell != 0 of grid, eta grid, n 0..10, 41 x in [-2, 2]";
    auto rpw = detail::make_residual("poly-wronskian-identity", pspec + " residual <= 1e-8");
    auto rpp = detail::make("poly-wronskian-positive", pspec, true, 1e-13);
    auto both = g.both_x();
    auto pos = g.positive_x();
    for (double l : g.ell)
        for (double e : g.eta) {
            CoulombParams p(l, e);
            if (!p.regular()) continue;
            for (double x : both) {
                try {
                    ro.add(thr - std::fabs(ode_residual(p, x)), {l, e, x});
                } catch (const Error& ex) {
                    detail::eval_failure(ro, {l, e, x}, ex);
                }
            }
            if (!p.shifted(-1.0).regular() || !p.shifted(1.0).regular()) continue;
            for (double x : pos) {
                try {
                    auto r = recurrence_residuals(p, x);
                    rdn.add(thr - r.r1_down, {l, e, x});
                    rup.add(thr - r.r1_up, {l, e, x});
                    rmx.add(thr - r.r2, {l, e, x});
                } catch (const Error& ex) {
                    detail::eval_failure(rmx, {l, e, x}, ex);
                }
            }
        }
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!(l > -0.5) || l == 0.0) continue;
            CoulombParams p(l, e);
            for (int n = 0; n <= 10; ++n)
                for (int i = 0; i <= 40; ++i) {
                    double x = -2.0 + 0.1 * i;
                    auto w = ortho::wronskian_R_positivity(p, n, x);
                    rpw.add(thr - w.rel_residual, {l, e, x});
                    rpp.add(w.value / w.positive_sum, {l, e, x});
                }
        }
    return {ro.finish(), rdn.finish(), rup.finish(), rmx.finish(), rpw.finish(), rpp.finish()};
}

struct PolyConfig {
    int explicit_max_n = 20;
    int chain_max_n = 40;
    int dini_max_n = 20;
    std::vector<double> Hs{0.0, 0.5, 1.0, 3.0};
};

// Dual construction of R_n, reality/simplicity and chain interlacing of its
// zeros, and the interlacing of D_n(H) zeros with R_n zeros.
inline std::vector<CheckReport> check_polynomials(const Grid& g, const PolyConfig& c = {}) {
    auto re = detail::make_residual("poly-explicit-agreement", g.spec() + " n <= " + std::to_string(c.explicit_max_n));
    auto rs = detail::make("poly-zeros-simple", g.spec() + " n <= " + std::to_string(c.chain_max_n), true, 1e-13);
    auto rc = detail::make("poly-chain-interlace", g.spec() + " n <= " + std::to_string(c.chain_max_n), true, 1e-13);
    auto rd = detail::make("dini-poly-interlace", g.spec() + " H{0,0.5,1,3} n <= " + std::to_string(c.dini_max_n),
                           true, 1e-13);
    long unresolved = 0, total_gaps = 0;
    for (double l : g.ell)
        for (double e : g.eta) {
            if (!detail::laguerre_class(l, e)) continue;
            CoulombParams p(l, e);
            for (int n = 0; n <= c.explicit_max_n; ++n) {
                try {
                    auto a = ortho::R_poly(p, n), b = ortho::R_explicit(p, n);
                    auto s = ortho::coefficient_scale(p, n);
                    double m = 0.0;
                    for (int j = 0; j <= n; ++j) m = std::max(m, std::fabs(a.coeffs[j] - b.coeffs[j]) / s[j]);
                    re.add(1e-10 - m, {l, e, double(n)});
                } catch (const Error& ex) {
                    detail::eval_failure(re, {l, e, double(n)}, ex);
                }
            }
            std::vector<double> prev;
            for (int n = 1; n <= c.chain_max_n; ++n) {
                auto z = ortho::poly_zeros_R(p, n);
                double rho = ortho::spectral_bound(p, n);
                GridPoint at{l, e, double(n)};
                // sign of R_n must flip across every computed zero
                int expect = (n % 2 == 0) ? 1 : -1;
                double left = z.front() - 0.5 * rho - 1e-300;
                bool ok = (ortho::R_value(l, e, n, left).first > 0.0) == (expect > 0);
                for (int i = 0; i + 1 < n && ok; ++i) {
                    expect = -expect;
                    double mid = 0.5 * (z[i] + z[i + 1]);
                    ok = (ortho::R_value(l, e, n, mid).first > 0.0) == (expect > 0);
                }
                if (!ok) rs.add(-1.0, at);
                double gap = INFINITY;
                for (int i = 0; i + 1 < n; ++i) gap = std::min(gap, z[i + 1] - z[i]);
                if (n >= 2) rs.add(gap / rho, at);
                if (!prev.empty()) {
                    // bisection resolves eigenvalues to a few n ulps of the spectral radius
                    double res = 4.0 * (n + 1) * std::numeric_limits<double>::epsilon() * rho;
                    // z_1 < prev_1 < z_2 < ... < prev_{n-1} < z_n
                    for (size_t i = 0; i < prev.size(); ++i)
                        for (double gap : {prev[i] - z[i], z[i + 1] - prev[i]}) {
                            double sc = std::max({1.0, std::fabs(prev[i])});
                            rc.add(gap / sc, {l, e, prev[i]}, res / sc);
                            ++total_gaps;
                            if (gap <= res) ++unresolved;
                        }
                }
                prev = z;
                if (e == 0.0 || n > c.dini_max_n) continue;
                for (double H : c.Hs) {
                    try {
                        auto d = ortho::poly_zeros_D(p, n, H);
                        if (static_cast<int>(d.size()) != ortho::D_poly(p, n, H).degree) {
                            rd.add(-1.0, at);
                            continue;
                        }
                        detail::add_alternation(rd, z, d, l, e, false);
                    } catch (const Error& ex) {
                        detail::eval_failure(rd, at, ex);
                    }
                }
            }
        }
    if (unresolved > 0)
        rc.note = std::to_string(unresolved) + " of " + std::to_string(total_gaps) +
                  " gaps lie below the eigenvalue resolution";
    return {re.finish(), rs.finish(), rc.finish(), rd.finish()};
}

struct PadeConfig {
    ParamList params{{0.0, 1.0}, {0.5, -1.0}, {0.2, 0.5}};
    std::vector<double> xs{0.5, 1.0, 2.0};
    std::vector<double> Hs{0.0, 1.0};
    int n_from = 10, n_to = 40;
    double threshold = 1e-5;
};

// Convergence of the scaled polynomials to phi and to x phi' + H phi.
inline std::vector<CheckReport> check_pade(const PadeConfig& c = {}) {
    std::string spec = "3 (ell, eta) pairs, x{0.5,1,2}, n " + std::to_string(c.n_from) + ".." + std::to_string(c.n_to);
    auto rp = detail::make("pade-decreasing", spec, true, 0.0);
    auto rd = detail::make("dini-limit-decreasing", spec + " H{0,1}", true, 0.0);
    auto tp = detail::make_residual("pade-threshold", spec + " final residual <= 1e-5");
    auto td = detail::make_residual("dini-limit-threshold", spec + " H{0,1} final residual <= 1e-5");
    for (auto [l, e] : c.params) {
        CoulombParams p(l, e);
        for (double x : c.xs) {
            GridPoint at{l, e, x};
            std::vector<std::function<double(int)>> fs{[&](int n) { return ortho::pade_limit_residual(p, n, x); }};
            for (double H : c.Hs) fs.push_back([&, H](int n) { return ortho::dini_limit_residual(p, n, H, x); });
            for (size_t i = 0; i < fs.size(); ++i) {
                auto& dec = i == 0 ? rp : rd;
                auto& thr = i == 0 ? tp : td;
                double prev = fs[i](c.n_from);
                for (int n = c.n_from + 1; n <= c.n_to; ++n) {
                    double cur = fs[i](n);
                    dec.add((prev - cur) / prev, {l, e, x});
                    prev = cur;
                }
                thr.add(c.threshold - prev, at);
            }
        }
    }
    return {rp.finish(), rd.finish(), tp.finish(), td.finish()};
}

struct MLPoint {
    double ell, eta, x;
};

inline std::vector<MLPoint> mittag_leffler_points() {
    return {{0.2, 0.5, 1.0}, {0.0, 1.0, 0.7}, {1.0, -1.0 / 3.0, 2.5}, {-0.6, 3.0, -1.5}, {2.5, -2.0, 0.3}};
}

// Truncation residuals of both partial-fraction expansions shrink when
// the number of zeros doubles.
inline CheckReport check_mittag_leffler(const std::vector<MLPoint>& pts = mittag_leffler_points(), int N = 100) {
    auto r = detail::make("mittag-leffler-truncation",
                          std::to_string(pts.size()) + " points, N " + std::to_string(N) + " -> " + std::to_string(2 * N),
                          true, 0.0);
    for (auto pt : pts) {
        CoulombParams p(pt.ell, pt.eta);
        try {
            auto a = ortho::mittag_leffler_residual(p, pt.x, N);
            auto b = ortho::mittag_leffler_residual(p, pt.x, 2 * N);
            r.add((a.r1 - b.r1) / a.r1, {pt.ell, pt.eta, pt.x});
            r.add((a.r2 - b.r2) / a.r2, {pt.ell, pt.eta, pt.x});
        } catch (const Error& ex) {
            detail::eval_failure(r, {pt.ell, pt.eta, pt.x}, ex);
        }
    }
    return r.finish();
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"all",  "laguerre", "bounds",   "interlace", "monotone",
                                            "poly", "section6", "identities"};
    return n;
}

// Reports of one suite, sorted by claim id.
inline std::vector<CheckReport> run_suite(const std::string& suite, const Grid& g = default_grid()) {
    std::vector<CheckReport> out;
    auto add = [&](std::vector<CheckReport> v) { out.insert(out.end(), v.begin(), v.end()); };
    bool all = suite == "all";
    bool known = false;
    if (all || suite == "laguerre") {
        known = true;
        out.push_back(check_laguerre(g));
    }
    if (all || suite == "bounds") {
        known = true;
        add(check_laguerre_sandwich(g));
        add(check_uniform_bounds(g));
        add(check_special_bounds(g));
        add(check_zero_lower_bounds(g));
    }
    if (all || suite == "interlace") {
        known = true;
        out.push_back(check_separation(separation_params(g)));
        out.push_back(check_interlace_low_ell(low_ell_params(g)));
        add(check_wronskian(g));
        add(check_dini_interlacing(g));
    }
    if (all || suite == "monotone") {
        known = true;
        add(check_monotonicity());
    }
    if (all || suite == "poly") {
        known = true;
        add(check_polynomials(g));
        add(check_pade());
        out.push_back(check_mittag_leffler());
    }
    if (all || suite == "section6") {
        known = true;
        add(check_three_term(g));
        add(check_common_zero());
    }
    if (all || suite == "identities") {
        known = true;
        add(check_identities(g));
    }
    if (!known) throw ParameterError("unknown suite '" + suite + "'");
    std::sort(out.begin(), out.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.claim_id < b.claim_id; });
    return out;
}

}  // namespace coulomb::verify
