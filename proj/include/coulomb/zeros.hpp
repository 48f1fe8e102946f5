#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "check_report.hpp"
#include "errors.hpp"
#include "special.hpp"

namespace coulomb {

enum class TargetKind { varphi, varphi_prime, f_prime, dini };

struct Target {
    TargetKind kind = TargetKind::varphi;
    double H = 0.0;  // dini only

    static Target varphi() { return {TargetKind::varphi, 0.0}; }
    static Target varphi_prime() { return {TargetKind::varphi_prime, 0.0}; }
    static Target f_prime() { return {TargetKind::f_prime, 0.0}; }
    static Target dini(double H) { return {TargetKind::dini, H}; }
};

inline std::string to_string(const Target& t) {
    switch (t.kind) {
        case TargetKind::varphi: return "varphi";
        case TargetKind::varphi_prime: return "varphi_prime";
        case TargetKind::f_prime: return "f_prime";
        default: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "dini(H=%.17g)", t.H);
            return buf;
        }
    }
}

struct TargetValue {
    double value = 0.0;
    double err = 0.0;
};

// Value of the target function. F' shares its positive zeros with
// x varphi' + (l+1) varphi, and every target is built on varphi so that
// half-integer ell is covered.
inline TargetValue target_value(const CoulombParams& p, const Target& t, double x) {
    auto v = detail::varphi_values(p, x);
    switch (t.kind) {
        case TargetKind::varphi: return {v.f, v.e0};
        case TargetKind::varphi_prime: return {v.d1, v.e1};
        case TargetKind::f_prime: {
            double H = p.ell() + 1.0;
            return {x * v.d1 + H * v.f, std::fabs(x) * v.e1 + std::fabs(H) * v.e0};
        }
        default:
            return {x * v.d1 + t.H * v.f, std::fabs(x) * v.e1 + std::fabs(t.H) * v.e0};
    }
}

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    int f_lo_sign = 0;
    int f_hi_sign = 0;
};

struct ZeroSet {
    CoulombParams params{0.0, 0.0};
    Target target;
    std::vector<double> zeros;
    double tol = 1e-11;
    bool truncated = false;
};

inline constexpr double scan_start = 1e-6;
inline constexpr double default_zero_tol = 1e-11;

inline double zero_lower_bound(const CoulombParams& p) {
    double e = p.eta(), l1 = p.ell() + 1.0;
    return e + std::sqrt(e * e + l1 * l1);
}

namespace detail {

inline int sgn(double v) { return (v > 0.0) - (v < 0.0); }

inline std::vector<Bracket> scan_at_step(const std::function<double(double)>& f, double a,
                                         double b, double step, int max_count) {
    std::vector<Bracket> out;
    double x0 = a, f0 = f(a);
    int n = static_cast<int>(std::ceil((b - a) / step));
    for (int i = 1; i <= n && static_cast<int>(out.size()) < max_count; ++i) {
        double x1 = (i == n) ? b : a + i * step;
        double f1 = f(x1);
        if (f1 == 0.0) {
            // exact hit: widen slightly so the bracket is proper
            double d = 1e-3 * step;
            double fl = f(x1 - d), fr = f(x1 + d);
            if (sgn(fl) * sgn(fr) < 0) out.push_back({x1 - d, x1 + d, sgn(fl), sgn(fr)});
            x0 = x1 + d;
            f0 = fr;
            continue;
        }
        if (sgn(f0) * sgn(f1) < 0) out.push_back({x0, x1, sgn(f0), sgn(f1)});
        x0 = x1;
        f0 = f1;
    }
    return out;
}

// Brent's method on a sign-change bracket
inline double brent(const std::function<double(double)>& f, double a, double b, double fa,
                    double fb, double tol, int max_iter = 200) {
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            double m1 = 3.0 * xm * q - std::fabs(tol1 * q);
            double m2 = std::fabs(e * q);
            if (2.0 * p < std::min(m1, m2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    throw ConvergenceError("root refinement did not converge in 200 iterations");
}

}  // namespace detail

// Sign-change brackets of the target on (0, x_max]. The step starts at
// pi/8 and is halved until two successive resolutions agree.
inline std::vector<Bracket> scan_brackets(const CoulombParams& p, const Target& t, double x_max,
                                          int max_count) {
    if (x_max > certified_max_x())
        throw DomainError("scan_brackets: x_max beyond the evaluation domain");
    if (!(x_max > scan_start)) return {};
    auto f = [&](double x) { return target_value(p, t, x).value; };
    double step = std::numbers::pi / 8.0;
    int cap = max_count + 2;
    auto prev = detail::scan_at_step(f, scan_start, x_max, step, cap);
    for (int level = 0; level < 8; ++level) {
        step *= 0.5;
        auto cur = detail::scan_at_step(f, scan_start, x_max, step, cap);
        bool same = cur.size() == prev.size();
        for (size_t i = 0; same && i < cur.size(); ++i)
            same = cur[i].lo >= prev[i].lo - 1e-12 && cur[i].hi <= prev[i].hi + 1e-12;
        prev = std::move(cur);
        if (same) break;
    }
    if (static_cast<int>(prev.size()) > max_count) prev.resize(max_count);
    return prev;
}

inline double refine(const CoulombParams& p, const Target& t, const Bracket& b,
                     double tol = default_zero_tol) {
    if (!(b.lo < b.hi) || b.f_lo_sign * b.f_hi_sign != -1)
        throw BracketFailure("refine: invalid bracket");
    auto f = [&](double x) { return target_value(p, t, x).value; };
    double flo = f(b.lo), fhi = f(b.hi);
    if (flo == 0.0) return b.lo;
    if (fhi == 0.0) return b.hi;
    if (detail::sgn(flo) * detail::sgn(fhi) >= 0)
        throw BracketFailure("refine: endpoints do not change sign");
    double z = detail::brent(f, b.lo, b.hi, flo, fhi, tol);
    // simple-zero check: the crossing direction near z matches the bracket
    double d = std::max(4.0 * tol, 1e-9 * std::fabs(z));
    double zl = std::max(b.lo, z - d), zr = std::min(b.hi, z + d);
    int sl = detail::sgn(f(zl)), sr = detail::sgn(f(zr));
    if (sl != 0 && sr != 0 && (sl != detail::sgn(flo) || sr != detail::sgn(fhi)))
        throw ConvergenceError("refine: crossing direction inconsistent, zero not simple");
    return z;
}

inline ZeroSet positive_zeros(const CoulombParams& p, const Target& t, int count,
                              double tol = default_zero_tol) {
    if (count < 1) throw ParameterError("positive_zeros: count must be >= 1");
    ZeroSet zs{p, t, {}, tol, false};
    auto br = scan_brackets(p, t, certified_max_x(), count);
    for (const auto& b : br) zs.zeros.push_back(refine(p, t, b, tol));
    zs.truncated = static_cast<int>(zs.zeros.size()) < count;
    return zs;
}

// Negative zeros via varphi_{l,eta}(-x) = varphi_{l,-eta}(x), ascending.
inline ZeroSet negative_zeros(const CoulombParams& p, const Target& t, int count,
                              double tol = default_zero_tol) {
    ZeroSet pos = positive_zeros(p.reflected(), t, count, tol);
    ZeroSet zs{p, t, {}, tol, pos.truncated};
    for (auto it = pos.zeros.rbegin(); it != pos.zeros.rend(); ++it) zs.zeros.push_back(-*it);
    return zs;
}

enum class InterlacePattern { a_first, b_first };

// Strict alternation of two ascending sequences; margin is the smallest
// gap between neighbours of the merged list.
inline CheckReport interlace_check(const std::vector<double>& a, const std::vector<double>& b,
                                   InterlacePattern pattern, const std::string& claim_id = "interlace",
                                   double tol = 1e-13) {
    long la = static_cast<long>(a.size()), lb = static_cast<long>(b.size());
    if (std::labs(la - lb) > 1) throw LengthMismatch("interlace_check: lengths differ by more than one");
    CheckReport r;
    r.claim_id = claim_id;
    r.strict = true;
    r.tolerance = tol;
    const auto& first = pattern == InterlacePattern::a_first ? a : b;
    const auto& second = pattern == InterlacePattern::a_first ? b : a;
    std::vector<double> merged;
    size_t i = 0, j = 0;
    while (i < first.size() || j < second.size()) {
        if (i < first.size()) merged.push_back(first[i++]);
        if (j < second.size()) merged.push_back(second[j++]);
    }
    if (first.size() < second.size()) {
        // the second sequence cannot be longer in a strict alternation
        r.add(-1.0, {NAN, NAN, second.back()});
    }
    for (size_t k = 1; k < merged.size(); ++k) {
        double gap = merged[k] - merged[k - 1];
        double scale = std::max({1.0, std::fabs(merged[k]), std::fabs(merged[k - 1])});
        r.add(gap / scale, {NAN, NAN, merged[k]});
    }
    if (merged.size() < 2) r.add(INFINITY, {});
    return r.finish();
}

inline CheckReport interlace_check(const ZeroSet& a, const ZeroSet& b, InterlacePattern pattern,
                                   const std::string& claim_id = "interlace") {
    auto r = interlace_check(a.zeros, b.zeros, pattern, claim_id);
    r.grid_spec = a.params.str() + " vs " + b.params.str();
    return r;
}

enum class Axis { ell, eta };

struct Trajectory {
    Axis axis = Axis::ell;
    std::vector<double> grid;
    int k = 1;
    std::vector<double> values;
    std::vector<bool> step_ok;
    bool continuity_ok = true;
    bool monotone_increasing = false;
    double min_forward_diff = INFINITY;
};

namespace detail {

inline double kth_zero_cold(const CoulombParams& p, int k) {
    auto zs = positive_zeros(p, Target::varphi(), k);
    if (static_cast<int>(zs.zeros.size()) < k)
        throw LossOfZeroError("zero " + std::to_string(k) + " left the evaluation domain at " + p.str());
    return zs.zeros[k - 1];
}

// Look for a sign change within +-w of the guess, nearest first.
inline bool kth_zero_warm(const CoulombParams& p, double guess, double w, double& z) {
    auto f = [&](double x) { return target_value(p, Target::varphi(), x).value; };
    double lo = std::max(scan_start, guess - w), hi = std::min(certified_max_x(), guess + w);
    if (!(lo < hi)) return false;
    const int n = 16;
    double best = INFINITY;
    double xs[n + 1], fs[n + 1];
    for (int i = 0; i <= n; ++i) {
        xs[i] = lo + (hi - lo) * i / n;
        fs[i] = f(xs[i]);
    }
    int found = 0;
    for (int i = 0; i < n; ++i) {
        if (sgn(fs[i]) * sgn(fs[i + 1]) > 0) continue;
        if (fs[i] == 0.0 || fs[i + 1] == 0.0) {
            double c = fs[i] == 0.0 ? xs[i] : xs[i + 1];
            if (std::fabs(c - guess) < std::fabs(best - guess)) best = c;
            ++found;
            continue;
        }
        double c = brent(f, xs[i], xs[i + 1], fs[i], fs[i + 1], default_zero_tol);
        ++found;
        if (std::fabs(c - guess) < std::fabs(best - guess)) best = c;
    }
    if (found != 1) return false;  // ambiguous or empty window: fall back
    z = best;
    return true;
}

}  // namespace detail

// k-th positive zero of varphi along an ell- or eta-sweep with warm starts.
inline Trajectory trace_zero(const CoulombParams& p0, Axis axis, double a, double b, int steps,
                             int k) {
    if (steps < 1 || !(a < b)) throw ParameterError("trace_zero: need a < b and steps >= 1");
    if (k < 1) throw ParameterError("trace_zero: k must be >= 1");
    Trajectory tr;
    tr.axis = axis;
    tr.k = k;
    for (int i = 0; i <= steps; ++i) tr.grid.push_back(i == steps ? b : a + (b - a) * i / steps);
    auto at = [&](double s) { return axis == Axis::ell ? p0.with_ell(s) : p0.with_eta(s); };
    double slope = 1.0, dir = 0.0;
    for (int i = 0; i <= steps; ++i) {
        CoulombParams p = at(tr.grid[i]);
        double z;
        bool ok = true;
        if (i == 0) {
            z = detail::kth_zero_cold(p, k);
        } else {
            double h = tr.grid[i] - tr.grid[i - 1];
            double bound = 5.0 * h * (slope + 1.0);
            double guess = tr.values.back() + dir * h;
            double w = std::min(bound, 1.0);
            if (!detail::kth_zero_warm(p, guess, w, z)) z = detail::kth_zero_cold(p, k);
            double dz = z - tr.values.back();
            if (std::fabs(dz) > bound) ok = false;
            slope = std::fabs(dz) / h;
            dir = dz / h;
        }
        tr.values.push_back(z);
        tr.step_ok.push_back(ok);
        if (!ok) tr.continuity_ok = false;
    }
    tr.monotone_increasing = true;
    for (size_t i = 1; i < tr.values.size(); ++i) {
        double d = tr.values[i] - tr.values[i - 1];
        tr.min_forward_diff = std::min(tr.min_forward_diff, d);
        if (!(d > 0.0)) tr.monotone_increasing = false;
    }
    return tr;
}

inline double common_zero_candidate(const CoulombParams& p) {
    if (p.eta() == 0.0) throw ParameterError("common_zero_candidate needs eta != 0");
    return -(p.ell() + 1.0) * (p.ell() + 2.0) / p.eta();
}

struct EllStar {
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// ell where varphi_{l,eta} vanishes at rho*(l), by bisection.
inline EllStar find_ell_star(double eta, double lo = -0.5, double hi = -0.01, double tol = 1e-10) {
    if (eta == 0.0) throw ParameterError("find_ell_star needs eta != 0");
    if (!(lo < hi)) throw ParameterError("find_ell_star: need lo < hi");
    auto g = [&](double l) {
        CoulombParams p(l, eta);
        return varphi_eval(p, common_zero_candidate(p)).value;
    };
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return {lo, lo, lo};
    if (ghi == 0.0) return {hi, hi, hi};
    if (detail::sgn(glo) * detail::sgn(ghi) > 0)
        throw NoSignChangeError("find_ell_star: no sign change on the search window");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0.0) return {mid, mid, mid};
        if (detail::sgn(gm) == detail::sgn(glo)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), lo, hi};
}

}  // namespace coulomb
