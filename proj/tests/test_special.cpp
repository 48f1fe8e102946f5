#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <coulomb/coulomb.hpp>

using namespace coulomb;
using std::numbers::pi;

namespace {

// value, derivative of phi; mpmath 1F1 at 50 digits
struct PhiOracle {
    double ell, eta, x, phi, dphi;
};

const PhiOracle phi_oracle[] = {
    {0.0, 1.0, 5.0, 1.2634597601719869799, -1.587548275783958446},
    {0.2, 0.5, 30.0, 0.034624164305215255263, -0.038397966207530948847},
    {2.5, 3.0, 50.0, -0.018467282193722012087, 0.0014901057421535552814},
    {-1.7, -2.0, -50.0, 10744.220578265006544, 66969.873651619523431},
    {-1.4, 3.0, 45.0, -882917.56187728428849, -369818.79662525422429},
    {-0.6, -1.0 / 3.0, -24.5, -0.51355843149389180705, 0.057082145042071626886},
    {1.0, -2.0, 49.9, -0.000028278333764184624141, 0.00015323623632639319868},
    {-1.0 / 3.0, 1.0 / 3.0, 0.001, 1.0004998570833392881, 0.49971410716667852908},
    {2.5, -2.0, -50.0, 0.0019022292489590972098, 0.0002398210550603067519},
    {0.0, 0.0, 50.0, -0.0052474970740785757183, 0.019404270511323836996},
};

}  // namespace

TEST(DoubleDouble, CarriesLowOrderBits) {
    using detail::dd;
    dd a = dd(1.0) + dd(1e-20);
    EXPECT_EQ(a.hi, 1.0);
    EXPECT_DOUBLE_EQ(a.lo, 1e-20);
    dd third = dd(1.0) / dd(3.0);
    dd back = third * 3.0 - dd(1.0);
    EXPECT_LT(std::fabs(back.hi), 1e-31);
}

TEST(Params, RegimeClassification) {
    EXPECT_TRUE(CoulombParams(0.0, 1.0).regular());
    CoulombParams h(-1.5, 1.0);
    EXPECT_EQ(h.regime(), Regime::half_integer);
    EXPECT_EQ(h.half_integer_n(), 2);
    EXPECT_EQ(CoulombParams(-1.0, 0.3).half_integer_n(), 1);
    EXPECT_EQ(CoulombParams(-1.5 + 1e-10, 0.0).regime(), Regime::half_integer);
    EXPECT_TRUE(CoulombParams(-1.5 + 1e-6, 0.0).regular());
    EXPECT_TRUE(CoulombParams(-0.5, 0.0).regular());
    EXPECT_THROW(CoulombParams(NAN, 0.0), ParameterError);
    EXPECT_THROW(CoulombParams(0.0, INFINITY), ParameterError);
}

TEST(Gamma, KnownValues) {
    EXPECT_NEAR(std::abs(log_gamma_complex({1.0, 0.0})), 0.0, 1e-14);
    EXPECT_NEAR(log_gamma_complex({5.0, 0.0}).real(), std::log(24.0), 1e-13);
    // |Gamma(1+i)|^2 = pi / sinh(pi)
    double lg = log_gamma_complex({1.0, 1.0}).real();
    EXPECT_NEAR(std::exp(2.0 * lg), pi / std::sinh(pi), 1e-14);
    int s = 0;
    double la = log_abs_gamma(-0.5, &s);
    EXPECT_EQ(s, -1);
    EXPECT_NEAR(std::exp(la), 2.0 * std::sqrt(pi), 1e-13);
    EXPECT_EQ(reciprocal_gamma(-2.0), 0.0);
    EXPECT_THROW(log_gamma_complex({-3.0, 0.0}), PoleError);
}

TEST(Gamow, SpecValues) {
    EXPECT_NEAR(gamow_constant({0.0, 0.0}), 1.0, 1e-14);
    EXPECT_NEAR(gamow_constant({1.0, 0.0}), 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(gamow_constant({0.0, 1.0}), std::exp(-pi / 2) * std::sqrt(pi / std::sinh(pi)), 1e-14);
}

TEST(Gamow, OracleValuesAndSign) {
    EXPECT_NEAR(gamow_constant({0.2, 0.5}) / 0.3329472138328075901909962, 1.0, 1e-13);
    EXPECT_NEAR(gamow_constant({2.5, -2.0}) / 0.3249586306899745682397004, 1.0, 1e-13);
    // Gamma(2l+2) < 0 for l in (-3/2, -1)
    double c = gamow_constant({-1.4, 3.0});
    EXPECT_LT(c, 0.0);
    EXPECT_NEAR(c / -0.000004923611618048978524411044, 1.0, 1e-13);
    EXPECT_THROW(gamow_constant({-1.5, 1.0}), RegimeError);
}

TEST(Series, Coefficients) {
    auto s = phi_series({0.0, 0.0}, 10);
    EXPECT_EQ(s.coeffs[0], 1.0);
    EXPECT_EQ(s.coeffs[1], 0.0);
    EXPECT_NEAR(s.coeffs[2], -1.0 / 6.0, 1e-16);
    auto t = phi_series({0.0, 1.0}, 10);
    EXPECT_NEAR(t.coeffs[1], 1.0, 1e-16);
    EXPECT_NEAR(t.coeffs[2], 1.0 / 6.0, 1e-16);
    auto u = phi_series({0.2, -0.7}, 40);
    EXPECT_DOUBLE_EQ(u.coeffs[1], -0.7 / 1.2);
    for (int k = 2; k <= 40; ++k) {
        double l = 0.2, e = -0.7;
        double lhs = k * (k + 2 * l + 1) * u.coeffs[k];
        double rhs = 2 * e * u.coeffs[k - 1] - u.coeffs[k - 2];
        EXPECT_LE(std::fabs(lhs - rhs), 1e-14 * std::max(std::fabs(rhs), 1e-300)) << k;
    }
    EXPECT_GT(u.radius_hint, 0.0);
    EXPECT_THROW(phi_series({-1.0, 1.0}, 10), ParameterError);
    EXPECT_THROW(phi_series({-2.5, 1.0}, 10), RegimeError);
}

TEST(PhiEval, ClosedForms) {
    EXPECT_NEAR(phi_eval({0.0, 0.0}, pi).value, 0.0, 1e-12);
    EXPECT_NEAR(phi_eval({0.0, 0.0}, 1.0).value, std::sin(1.0), 1e-15);
    EXPECT_EQ(phi_eval({0.7, -1.3}, 0.0).value, 1.0);
    EXPECT_NEAR(phi_derivative({0.0, 0.0}, pi).value, -1.0 / pi, 1e-14);
    EXPECT_NEAR(phi_derivative({0.7, -1.3}, 0.0).value, -1.3 / 1.7, 1e-15);
}

TEST(PhiEval, DerivativeMatchesFiniteDifference) {
    CoulombParams p(1.0, 0.5);
    double h = 1e-5;
    double fd = (phi_eval(p, 1.0 + h).value - phi_eval(p, 1.0 - h).value) / (2 * h);
    EXPECT_NEAR(phi_derivative(p, 1.0).value, fd, 1e-8);
}

TEST(PhiEval, MatchesOracleWithinBound) {
    for (const auto& o : phi_oracle) {
        CoulombParams p(o.ell, o.eta);
        auto v = phi_eval(p, o.x);
        auto d = phi_derivative(p, o.x);
        EXPECT_LE(std::fabs(v.value - o.phi), std::max(v.abs_err_bound, 4e-16 * std::fabs(o.phi)))
            << p.str() << " x=" << o.x;
        EXPECT_LE(std::fabs(d.value - o.dphi), std::max(d.abs_err_bound, 4e-16 * std::fabs(o.dphi)))
            << p.str() << " x=" << o.x;
        EXPECT_LE(std::fabs(v.value - o.phi), 1e-13 * std::fabs(o.phi)) << p.str() << " x=" << o.x;
        EXPECT_LT(v.abs_err_bound, 1e-12 * std::max(1.0, std::fabs(o.phi)));
    }
}

TEST(PhiEval, DomainAndRegimeErrors) {
    EXPECT_THROW(phi_eval({0.0, 0.0}, 50.5), DomainError);
    EXPECT_THROW(phi_eval({0.0, 0.0}, NAN), DomainError);
    EXPECT_THROW(phi_eval({-1.5, 1.0}, 2.0), RegimeError);
    EXPECT_THROW(phi_eval({-1.0, 1.0}, 2.0), ParameterError);
    EXPECT_THROW(phi_eval({-1.0, 0.0}, 2.0), RegimeError);
}

TEST(FEval, BesselCases) {
    for (double x : {0.1, 1.0, 4.5, 17.0, 30.0}) {
        EXPECT_NEAR(F_eval({0.0, 0.0}, x).value, std::sin(x), 1e-14);
        EXPECT_NEAR(F_eval({1.0, 0.0}, x).value, std::sin(x) / x - std::cos(x), 1e-14);
        EXPECT_NEAR(F_derivative({0.0, 0.0}, x).value, std::cos(x), 1e-14);
    }
    EXPECT_THROW(F_eval({0.0, 0.0}, 0.0), DomainError);
    EXPECT_THROW(F_eval({0.0, 0.0}, -1.0), DomainError);
}

TEST(FEval, OracleValues) {
    struct {
        double l, e, x, F, dF;
    } cases[] = {
        {1.0, 1.0, 10.0, -0.2233228537721850137283992, 0.9210281218002160309323505},
        {0.2, 0.5, 3.0, 1.09016203793198167005376, -0.1945358059131828354213118},
        {0.0, -2.0, 0.5, 0.4666890610306340757921443, -0.8464648345193163419432187},
        {2.0, 0.0, 7.0, -0.9398638955566060318209614, -0.3915144843673044732784944},
    };
    for (auto c : cases) {
        CoulombParams p(c.l, c.e);
        EXPECT_NEAR(F_eval(p, c.x).value, c.F, 1e-13 * std::fabs(c.F));
        EXPECT_NEAR(F_derivative(p, c.x).value, c.dF, 1e-13 * std::fabs(c.dF));
    }
    // direct 1F1 route at (0, 1, 5) carries the same value
    EXPECT_NEAR(F_eval({0.0, 1.0}, 5.0).value, 0.10842251310207262 * 5.0 * 1.2634597601719869799, 1e-13);
}

TEST(Varphi, RegularAndHalfInteger) {
    EXPECT_NEAR(varphi_eval({0.0, 0.0}, 1.0).value, std::sin(1.0), 1e-15);
    // even n: exact limit
    auto v = varphi_eval({-1.5, 0.5}, 2.0);
    EXPECT_FALSE(v.scaled_surrogate);
    EXPECT_NEAR(v.value, 4.688144977196549547986555, 1e-13 * 4.7);
    EXPECT_NEAR(varphi_eval({-1.5, 0.5}, -3.0).value, -0.1260664977718058596180802, 1e-14);
    EXPECT_NEAR(varphi_eval({-2.5, 1.0 / 3.0}, 4.0).value, 56.08332178638689031720353, 1e-12 * 56.0);
    // n = 2: 4 (eta^2 + 1/4) x^2 varphi_{1/2}
    double ref = 4.0 * (1.0 + 0.25) * 4.0 * varphi_eval({0.5, 1.0}, 2.0).value;
    EXPECT_NEAR(varphi_eval({-1.5, 1.0}, 2.0).value, ref, 1e-13 * std::fabs(ref));
    // n = 1: 2 eta x varphi_0, real and exact
    auto s = varphi_eval({-1.0, 0.7}, 1.3);
    EXPECT_FALSE(s.scaled_surrogate);
    EXPECT_NEAR(s.value, 2.0 * 0.7 * 1.3 * varphi_eval({0.0, 0.7}, 1.3).value, 1e-15);
    // n = 3: 8 eta (eta^2 + 1) x^3 varphi_1
    double r3 = 8.0 * 0.7 * 1.49 * std::pow(1.3, 3) * varphi_eval({1.0, 0.7}, 1.3).value;
    EXPECT_NEAR(varphi_eval({-2.0, 0.7}, 1.3).value, r3, 1e-14 * std::fabs(r3));
    // odd n at eta = 0 has a vanishing limit; x^n varphi is served and flagged
    auto z = varphi_eval({-1.0, 0.0}, 1.3);
    EXPECT_TRUE(z.scaled_surrogate);
    EXPECT_NEAR(z.value, std::sin(1.3), 1e-15);
}

TEST(Varphi, ContinuousThroughHalfInteger) {
    for (double l : {-1.5, -1.0, -2.0}) {
        double d = 1e-4;
        double a = varphi_eval({l + d, 1.0}, 2.0).value, b = varphi_eval({l - d, 1.0}, 2.0).value;
        double v = varphi_eval({l, 1.0}, 2.0).value;
        EXPECT_NEAR(v, 0.5 * (a + b), 1e-6 * std::fabs(v)) << l;
    }
}

TEST(Laguerre, SpecExamples) {
    EXPECT_NEAR(laguerre_expression({0.0, 0.0}, pi), 1.0 / (pi * pi), 1e-14);
    EXPECT_GE(laguerre_expression({-1.4, 3.0}, -7.0), 0.0);
    CoulombParams p(1.0, 0.5);
    EXPECT_NEAR(laguerre_expression(p, 3.0), laguerre_direct(p, 3.0), 1e-10);
    EXPECT_THROW(laguerre_expression(p, 0.0), DomainError);
}

TEST(Residuals, OdeSmall) {
    EXPECT_LE(std::fabs(ode_residual({0.0, 0.0}, 2.0)), 1e-11);
    EXPECT_LE(std::fabs(ode_residual({0.2, -0.2}, 4.0)), 1e-9);
    EXPECT_LE(std::fabs(ode_residual({2.0, 3.0}, 10.0)), 1e-8);
    EXPECT_LE(std::fabs(ode_residual({-1.4, 3.0}, -30.0)), 1e-12);
    EXPECT_THROW(ode_residual({0.0, 0.0}, 0.0), DomainError);
}

TEST(Residuals, ContiguousRelations) {
    auto r = recurrence_residuals({1.0, 0.0}, 2.0);
    EXPECT_LE(r.r1_up, 1e-10);
    for (auto [l, e, x] : {std::tuple{1.0, 0.5, 3.0}, {2.0, -1.0, 6.0}, {-0.3, 0.8, 1.5}}) {
        auto q = recurrence_residuals({l, e}, x);
        EXPECT_LE(q.r1_down, 1e-12);
        EXPECT_LE(q.r1_up, 1e-12);
        EXPECT_LE(q.r2, 1e-12);
    }
    EXPECT_THROW(recurrence_residuals({0.0, 1.0}, 2.0), RegimeError);
}
