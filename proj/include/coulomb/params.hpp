#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "errors.hpp"

namespace coulomb {

enum class Regime { regular, half_integer };

inline const char* to_string(Regime r) {
    return r == Regime::regular ? "regular" : "half_integer";
}

inline constexpr double half_integer_tol = 1e-9;

// Validated (ell, eta). Half-integer means 2*ell + 2 is a non-positive
// integer, i.e. ell = -(n+1)/2 with n >= 1.
class CoulombParams {
public:
    CoulombParams(double ell, double eta) : ell_(ell), eta_(eta) {
        if (!std::isfinite(ell) || !std::isfinite(eta))
            throw ParameterError("ell and eta must be finite");
        double t = 2.0 * ell + 2.0;
        double r = std::round(t);
        if (r <= 0.0 && std::fabs(t - r) <= 2.0 * half_integer_tol) {
            regime_ = Regime::half_integer;
            n_ = static_cast<int>(1.0 - r);
        }
    }

    double ell() const { return ell_; }
    double eta() const { return eta_; }
    Regime regime() const { return regime_; }
    bool regular() const { return regime_ == Regime::regular; }
    // n in ell = -(n+1)/2, zero when regular
    int half_integer_n() const { return n_; }

    CoulombParams with_ell(double ell) const { return {ell, eta_}; }
    CoulombParams with_eta(double eta) const { return {ell_, eta}; }
    CoulombParams shifted(double d) const { return {ell_ + d, eta_}; }
    CoulombParams reflected() const { return {ell_, -eta_}; }

    std::string str() const {
        char buf[96];
        std::snprintf(buf, sizeof buf, "(ell=%.17g, eta=%.17g)", ell_, eta_);
        return buf;
    }

private:
    double ell_;
    double eta_;
    Regime regime_ = Regime::regular;
    int n_ = 0;
};

}  // namespace coulomb
