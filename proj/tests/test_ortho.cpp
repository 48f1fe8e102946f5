#include <gtest/gtest.h>

#include <cmath>

#include <coulomb/coulomb.hpp>

using namespace coulomb;
using namespace coulomb::ortho;

TEST(Recurrence, Coefficients) {
    EXPECT_DOUBLE_EQ(alpha(0.0, 1.0, 0), -0.25);
    EXPECT_DOUBLE_EQ(alpha(0.0, 1.0, 1), -1.0 / 12.0);
    EXPECT_DOUBLE_EQ(beta(0.0, 1.0, 1), 1.0 / 48.0);
    auto rc = recurrence_coeffs({0.0, 1.0}, 2);
    EXPECT_DOUBLE_EQ(rc.zeta, beta(0.0, 1.0, 1) * beta(0.0, 1.0, 2));
    for (int n = 1; n < 30; ++n) EXPECT_GT(beta(-1.4, 0.3, n), 0.0);
    EXPECT_THROW(recurrence_coeffs({-1.0, 1.0}, 2), ParameterError);
    EXPECT_THROW(recurrence_coeffs({-1.6, 1.0}, 2), ParameterError);
}

TEST(RPoly, LowDegrees) {
    CoulombParams p(0.0, 1.0);
    auto r0 = R_poly(p, 0);
    EXPECT_EQ(r0.degree, 0);
    EXPECT_EQ(r0.coeffs[0], 1.0);
    auto r1 = R_poly(p, 1);
    EXPECT_DOUBLE_EQ(r1.coeffs[0], 0.25);
    EXPECT_DOUBLE_EQ(r1.coeffs[1], 1.0);
    auto r2 = R_poly(p, 2);
    // (x + 1/12)(x + 1/4) - 1/48
    EXPECT_NEAR(r2.coeffs[0], 1.0 / 48.0 - 1.0 / 48.0, 1e-17);
    EXPECT_NEAR(r2.coeffs[1], 1.0 / 3.0, 1e-16);
    EXPECT_EQ(r2.coeffs[2], 1.0);
}

TEST(RPoly, OracleCoefficients) {
    auto r = R_poly({0.5, 2.0}, 3);
    const double want[] = {-0.00099206349206349206349, 0.030671296296296296296, 0.44444444444444444444, 1.0};
    for (int i = 0; i <= 3; ++i) EXPECT_NEAR(r.coeffs[i], want[i], 1e-15 * std::fabs(want[i]));
}

TEST(RPoly, ValueMatchesCoefficients) {
    CoulombParams p(0.2, 0.5);
    auto r = R_poly(p, 9);
    for (double x : {-0.3, 0.05, 0.4}) {
        auto [v, d] = R_value(0.2, 0.5, 9, x);
        EXPECT_NEAR(v, r(x), 1e-14);
        EXPECT_NEAR(d, r.derivative(x), 1e-13);
    }
    EXPECT_THROW(R_poly(p, 201), DomainError);
}

TEST(RExplicit, AgreesWithRecurrence) {
    CoulombParams q(0.5, 2.0);
    auto a = R_explicit(q, 0);
    EXPECT_EQ(a.coeffs[0], 1.0);
    auto e1 = R_explicit(q, 1), r1 = R_poly(q, 1);
    for (int i = 0; i <= 1; ++i) EXPECT_NEAR(e1.coeffs[i], r1.coeffs[i], 1e-12);
    auto e = R_explicit(q, 10), r = R_poly(q, 10);
    auto sc = coefficient_scale(q, 10);
    EXPECT_EQ(e.provenance, Provenance::explicit_form);
    for (int i = 0; i <= 10; ++i) EXPECT_NEAR(e.coeffs[i], r.coeffs[i], 1e-10 * sc[i]) << i;
    for (double l : {-1.2, -0.4, 0.0, 1.0, 2.5})
        for (double et : {-2.0, -1.0 / 3.0, 0.5, 3.0}) {
            CoulombParams p(l, et);
            for (int n : {5, 20}) {
                auto x = R_explicit(p, n), y = R_poly(p, n);
                auto s = coefficient_scale(p, n);
                for (int i = 0; i <= n; ++i)
                    EXPECT_NEAR(x.coeffs[i], y.coeffs[i], 1e-10 * s[i]) << p.str() << " n=" << n << " i=" << i;
            }
        }
    EXPECT_THROW(R_explicit(q, 61), DomainError);
}

TEST(DPoly, DefinitionAndDegree) {
    CoulombParams p(0.0, 1.0);
    auto d = D_poly(p, 1, 0.0);
    // (1/2)(x + 1/4) - 1/6
    EXPECT_EQ(d.degree, 1);
    EXPECT_NEAR(d.coeffs[0], 0.125 - 1.0 / 6.0, 1e-16);
    EXPECT_NEAR(d.coeffs[1], 0.5, 1e-16);
    auto h = D_poly({0.2, 0.5}, 7, 1.0);
    EXPECT_EQ(h.degree, 8);
    EXPECT_DOUBLE_EQ(h.coeffs[8], 1.0);
    for (double x : {-0.2, 0.1, 0.3}) EXPECT_NEAR(h(x), D_value({0.2, 0.5}, 7, 1.0, x), 1e-14);
    EXPECT_THROW(D_poly(p, 0, 1.0), ParameterError);
}

TEST(PolyZeros, R) {
    CoulombParams p(0.0, 1.0);
    auto z1 = poly_zeros_R(p, 1);
    ASSERT_EQ(z1.size(), 1u);
    EXPECT_NEAR(z1[0], alpha(0.0, 1.0, 0), 1e-15);
    // (x + 1/12)(x + 1/4) - 1/48 = x (x + 1/3)
    auto z2 = poly_zeros_R(p, 2);
    ASSERT_EQ(z2.size(), 2u);
    EXPECT_NEAR(z2[0], -1.0 / 3.0, 1e-15);
    EXPECT_NEAR(z2[1], 0.0, 1e-15);
    auto z5 = poly_zeros_R({0.2, 0.5}, 5);
    const double want[] = {-0.20453578479537087416, -0.091099497964478578609, -0.024164019815480896194,
                           0.044392697468176360965, 0.10739585241898194499};
    ASSERT_EQ(z5.size(), 5u);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(z5[i], want[i], 1e-15);
    EXPECT_TRUE(poly_zeros_R(p, 0).empty());
}

TEST(PolyZeros, ChainInterlacesAtLowDegree) {
    CoulombParams p(1.0, -1.0 / 3.0);
    for (int n = 1; n < 12; ++n) {
        auto a = poly_zeros_R(p, n), b = poly_zeros_R(p, n + 1);
        for (int i = 0; i < n; ++i) {
            EXPECT_LT(b[i], a[i]) << n;
            EXPECT_LT(a[i], b[i + 1]) << n;
        }
    }
}

TEST(PolyZeros, EigenvaluesMatchSignChanges) {
    CoulombParams p(0.2, 0.5);
    for (int n = 2; n <= 15; ++n) {
        auto r = R_poly(p, n);
        for (double z : poly_zeros_R(p, n)) {
            double h = 1e-9 * std::max(1.0, std::fabs(z));
            EXPECT_LE(r(z - h) * r(z + h), 0.0) << n << " " << z;
        }
    }
}

TEST(PolyZeros, D) {
    CoulombParams p(0.2, 0.5);
    auto rz = poly_zeros_R(p, 6);
    auto dz = poly_zeros_D(p, 6, 1.0);
    ASSERT_EQ(dz.size(), 7u);
    for (int i = 0; i < 6; ++i) {
        EXPECT_LT(dz[i], rz[i]);
        EXPECT_GT(dz[i + 1], rz[i]);
    }
    EXPECT_EQ(poly_zeros_D(p, 8, 2.0).size(), 9u);
    EXPECT_EQ(poly_zeros_D(p, 1, 1.0).size(), 2u);
    CoulombParams q(0.0, 1.0);
    auto h0 = poly_zeros_D(q, 2, 0.0);
    auto d = D_poly(q, 2, 0.0);
    ASSERT_EQ(static_cast<int>(h0.size()), d.degree);
    for (double z : h0) EXPECT_NEAR(d(z), 0.0, 1e-15);
    EXPECT_THROW(poly_zeros_D(p, 3, -1.0), ParameterError);
}

TEST(Pade, Residuals) {
    CoulombParams p(0.0, 1.0);
    EXPECT_DOUBLE_EQ(pade_limit_residual(p, 0, 1.3), std::fabs(1.0 - phi_eval(p, 1.3).value));
    double prev = INFINITY;
    for (int n = 10; n <= 40; n += 10) {
        double r = pade_limit_residual(p, n, 1.0);
        EXPECT_LT(r, prev) << n;
        prev = r;
    }
    // measured at n = 40 (confirmed in 40-digit arithmetic); convergence is O(1/n)
    EXPECT_NEAR(pade_limit_residual(p, 40, 1.0), 3.787998e-02, 1e-7);
    CoulombParams q(0.5, -1.0);
    EXPECT_LE(pade_limit_residual(q, 60, 2.0), pade_limit_residual(q, 30, 2.0));
    EXPECT_THROW(pade_limit_residual(p, 5, 10.5), DomainError);
}

TEST(Pade, DiniLimit) {
    CoulombParams p(0.0, 1.0);
    EXPECT_EQ(dini_limit_residual(p, 5, 1.0, 0.0), 0.0);
    EXPECT_LE(dini_limit_residual(p, 40, 1.0, 1.0), dini_limit_residual(p, 20, 1.0, 1.0));
    EXPECT_NEAR(dini_limit_residual(p, 40, 1.0, 1.0), 5.805948e-02, 1e-7);
    // H = 0 targets x phi'
    double x = 0.7;
    double lhs = dini_scaled(p, 30, 0.0, x);
    EXPECT_NEAR(std::fabs(lhs - x * phi_derivative(p, x).value), dini_limit_residual(p, 30, 0.0, x), 1e-15);
}

TEST(PolyWronskian, PositiveAndConsistent) {
    auto w0 = wronskian_R_positivity({1.0, 1.0}, 0, 0.4);
    EXPECT_NEAR(w0.value, 1.0, 1e-15);
    auto w = wronskian_R_positivity({1.0, 1.0}, 3, 0.2);
    EXPECT_GT(w.value, 0.0);
    EXPECT_LE(w.rel_residual, 1e-9);
    auto v = wronskian_R_positivity({0.5, -2.0}, 5, -1.0);
    EXPECT_GT(v.value, 0.0);
    EXPECT_LE(v.rel_residual, 1e-9);
    EXPECT_THROW(wronskian_R_positivity({-0.6, 1.0}, 2, 0.1), RegimeError);
    EXPECT_THROW(wronskian_R_positivity({0.0, 1.0}, 2, 0.1), RegimeError);
}

TEST(Normalized, ScaledByZeta) {
    CoulombParams p(0.2, 0.5);
    auto rc = recurrence_coeffs(p, 4);
    EXPECT_NEAR(normalized_value(p, 4, 0.6), R_value(0.2, 0.5, 4, 0.3).first / std::sqrt(rc.zeta), 1e-12);
}

TEST(ExtendedZeros, ContinuesRefinedZeros) {
    CoulombParams p(0.2, 0.5);
    auto z = extended_positive_zeros(p, 40);
    ASSERT_EQ(z.size(), 40u);
    for (size_t i = 1; i < z.size(); ++i) EXPECT_GT(z[i], z[i - 1]);
    // spacing tends to pi
    EXPECT_NEAR(z[39] - z[38], std::numbers::pi, 0.05);
}

TEST(MittagLeffler, Residuals) {
    CoulombParams p(0.2, 0.5);
    auto a = mittag_leffler_residual(p, 1.0, 100), b = mittag_leffler_residual(p, 1.0, 200);
    EXPECT_LE(b.r1, a.r1);
    EXPECT_LE(b.r2, a.r2);
    EXPECT_LT(b.r1, 1e-2);
    auto z = mittag_leffler_residual(p, 0.0, 10);
    EXPECT_NEAR(z.r2, 0.0, 1e-15);
    CoulombParams s(0.0, 1e-3);
    auto c = mittag_leffler_residual(s, 1.0, 50), d = mittag_leffler_residual(s, 1.0, 150);
    EXPECT_LT(d.r2, c.r2);
    EXPECT_LT(d.r2, 1e-2);
    EXPECT_THROW(mittag_leffler_residual({0.0, 0.0}, 1.0, 10), ParameterError);
    double z1 = positive_zeros(p, Target::varphi(), 1).zeros[0];
    EXPECT_THROW(mittag_leffler_residual(p, z1, 10), PoleError);
}
