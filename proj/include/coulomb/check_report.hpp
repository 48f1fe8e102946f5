#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace coulomb {

enum class Verdict { pass, inconclusive, violation };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::inconclusive: return "inconclusive";
        default: return "violation";
    }
}

struct GridPoint {
    double ell = std::numeric_limits<double>::quiet_NaN();
    double eta = std::numeric_limits<double>::quiet_NaN();
    double x = std::numeric_limits<double>::quiet_NaN();
};

// Verdict of one property check. Margins are normalised so that a
// positive value means the claim holds at that point.
struct CheckReport {
    std::string claim_id;
    std::string grid_spec;
    double worst_margin = std::numeric_limits<double>::infinity();
    GridPoint worst_point;
    double worst_err = 0.0;  // evaluation error bound at the worst point
    bool strict = true;
    double tolerance = 1e-13;
    bool passed = false;
    Verdict verdict = Verdict::violation;
    long points = 0;
    std::string note;

    // Record one margin together with the error bound of its evaluation.
    void add(double margin, GridPoint at, double err = 0.0) {
        ++points;
        if (std::isnan(margin)) {
            worst_margin = margin;
            worst_point = at;
            worst_err = err;
            return;
        }
        if (std::isnan(worst_margin)) return;
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_point = at;
            worst_err = err;
        }
    }

    // passed: margin > tol for strict claims, margin >= -tol otherwise.
    // A failure within the error bound at that point is inconclusive.
    CheckReport& finish() {
        if (points == 0) {
            passed = false;
            verdict = Verdict::inconclusive;
            if (note.empty()) note = "no points evaluated";
            return *this;
        }
        if (std::isnan(worst_margin)) {
            passed = false;
            verdict = Verdict::violation;
            return *this;
        }
        passed = strict ? worst_margin > tolerance : worst_margin >= -tolerance;
        if (passed)
            verdict = Verdict::pass;
        else if (std::fabs(worst_margin) <= worst_err + tolerance)
            verdict = Verdict::inconclusive;
        else
            verdict = Verdict::violation;
        return *this;
    }
};

}  // namespace coulomb
