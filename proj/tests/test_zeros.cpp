#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <coulomb/coulomb.hpp>

using namespace coulomb;
using std::numbers::pi;

namespace {

void expect_zeros(const std::vector<double>& got, const std::vector<double>& want, double tol) {
    ASSERT_GE(got.size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], tol * std::fabs(want[i])) << i;
}

// sign-change count on a fine grid, the reference for bracket completeness
int dense_count(const CoulombParams& p, double x_max) {
    int n = 0;
    double prev = varphi_eval(p, scan_start).value;
    for (double x = scan_start + 1e-3; x <= x_max; x += 1e-3) {
        double v = varphi_eval(p, x).value;
        if (v == 0.0 || (v > 0.0) != (prev > 0.0)) ++n;
        prev = v;
    }
    return n;
}

}  // namespace

TEST(ZeroLowerBound, Arithmetic) {
    EXPECT_DOUBLE_EQ(zero_lower_bound({0.0, 0.0}), 1.0);
    EXPECT_NEAR(zero_lower_bound({1.0, -1.0}), -1.0 + std::sqrt(5.0), 1e-15);
}

TEST(Brackets, SineCase) {
    auto br = scan_brackets({0.0, 0.0}, Target::varphi(), 10.0, 10);
    ASSERT_EQ(br.size(), 3u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_LT(br[k].lo, (k + 1) * pi);
        EXPECT_GT(br[k].hi, (k + 1) * pi);
    }
}

TEST(Brackets, MatchDenseScan) {
    for (auto p : {CoulombParams(-5.0 / 3.0, 1.0 / 3.0), CoulombParams(0.2, -0.2)}) {
        auto br = scan_brackets(p, Target::varphi(), 15.0, 50);
        EXPECT_EQ(static_cast<int>(br.size()), dense_count(p, 15.0)) << p.str();
    }
}

TEST(Refine, KnownRoots) {
    CoulombParams p(0.0, 0.0);
    EXPECT_NEAR(refine(p, Target::varphi(), {3.0, 4.0, 1, -1}, 1e-12), pi, 1e-12);
    EXPECT_NEAR(refine(p, Target::varphi(), {6.0, 7.0, -1, 1}, 1e-12), 2 * pi, 1e-12);
    EXPECT_THROW(refine(p, Target::varphi(), {1.0, 2.0, 1, 1}, 1e-12), BracketFailure);
}

TEST(PositiveZeros, Sine) {
    auto z = positive_zeros({0.0, 0.0}, Target::varphi(), 3);
    EXPECT_FALSE(z.truncated);
    expect_zeros(z.zeros, {pi, 2 * pi, 3 * pi}, 1e-13);
    auto n = negative_zeros({0.0, 0.0}, Target::varphi(), 2);
    expect_zeros(n.zeros, {-2 * pi, -pi}, 1e-13);
}

TEST(PositiveZeros, Oracle) {
    expect_zeros(positive_zeros({0.0, 1.0}, Target::varphi(), 3).zeros,
                 {5.8141156158765638382, 9.4745339183743137551, 12.941652700155281863}, 1e-12);
    expect_zeros(positive_zeros({0.2, 0.5}, Target::varphi(), 3).zeros,
                 {4.6377763469111083731, 8.0754887095831090536, 11.397452901886802756}, 1e-12);
    expect_zeros(positive_zeros({-5.0 / 3.0, 1.0 / 3.0}, Target::varphi(), 3).zeros,
                 {4.6370729165224850496, 8.0146716812234812823, 11.292448743199514802}, 1e-12);
    expect_zeros(positive_zeros({-2.0 / 3.0, 1.0 / 3.0}, Target::varphi(), 3).zeros,
                 {3.5971275172395607979, 6.945687806899333494, 10.21217803732261224}, 1e-12);
    expect_zeros(negative_zeros({0.2, 0.5}, Target::varphi(), 2).zeros,
                 {-5.2571438500344515021, -2.4444910751909713963}, 1e-12);
    expect_zeros(positive_zeros({0.0, 1.0}, Target::f_prime(), 2).zeros,
                 {3.6574106375066570274, 7.6676777791176197792}, 1e-12);
    expect_zeros(positive_zeros({0.2, 0.5}, Target::dini(1.0), 2).zeros,
                 {2.5861554230510978874, 6.3331176869616443836}, 1e-12);
}

TEST(PositiveZeros, AboveLowerBound) {
    for (auto p : {CoulombParams(0.0, 1.0), CoulombParams(-0.6, 3.0), CoulombParams(2.5, -2.0)}) {
        double b = zero_lower_bound(p);
        for (double z : positive_zeros(p, Target::varphi(), 8).zeros) EXPECT_GT(z, b) << p.str();
        if (p.ell() > -1.0) {
            for (double z : positive_zeros(p, Target::f_prime(), 8).zeros) EXPECT_GT(z, b) << p.str();
        }
    }
}

TEST(PositiveZeros, Reflection) {
    auto a = negative_zeros({0.2, 0.2}, Target::varphi(), 5).zeros;
    auto b = positive_zeros({0.2, -0.2}, Target::varphi(), 5).zeros;
    ASSERT_EQ(a.size(), 5u);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(a[i], -b[4 - i], 1e-10);
}

TEST(PositiveZeros, SimpleZerosAlternateSlope) {
    CoulombParams p(1.0, -1.0 / 3.0);
    auto z = positive_zeros(p, Target::varphi(), 10).zeros;
    for (size_t i = 1; i < z.size(); ++i)
        EXPECT_LT(varphi_derivative(p, z[i]).value * varphi_derivative(p, z[i - 1]).value, 0.0);
}

TEST(PositiveZeros, TruncationAndErrors) {
    auto z = positive_zeros({0.0, 0.0}, Target::varphi(), 40);
    EXPECT_TRUE(z.truncated);
    EXPECT_EQ(z.zeros.size(), 15u);  // k pi <= 50
    EXPECT_THROW(positive_zeros({0.0, 0.0}, Target::varphi(), 0), ParameterError);
}

TEST(Interlace, SeparationPattern) {
    CoulombParams p(-1.0 / 3.0, -1.0 / 3.0);
    auto a = positive_zeros(p, Target::varphi(), 10);
    auto b = positive_zeros(p.shifted(1.0), Target::varphi(), 10);
    auto r = interlace_check(a, b, InterlacePattern::a_first, "sep");
    EXPECT_EQ(r.verdict, Verdict::pass);
    auto bad = interlace_check(a, b, InterlacePattern::b_first, "sep");
    EXPECT_EQ(bad.verdict, Verdict::violation);
}

TEST(Interlace, LengthMismatch) {
    EXPECT_THROW(interlace_check({1.0, 2.0, 3.0}, {1.5}, InterlacePattern::a_first, "x"), LengthMismatch);
    auto r = interlace_check({1.0, 3.0}, {2.0}, InterlacePattern::a_first, "x");
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Trace, EllAxisIncreasing) {
    auto t = trace_zero({-0.4, -0.2}, Axis::ell, -0.4, 3.0, 34, 1);
    EXPECT_TRUE(t.continuity_ok);
    EXPECT_TRUE(t.monotone_increasing);
    EXPECT_EQ(t.values.size(), 35u);
}

TEST(Trace, EtaAxisIncreasing) {
    auto t = trace_zero({0.2, -3.0}, Axis::eta, -3.0, 3.0, 30, 1);
    EXPECT_TRUE(t.continuity_ok);
    EXPECT_TRUE(t.monotone_increasing);
}

TEST(Trace, BesselOrderIncreasing) {
    auto t = trace_zero({0.0, 0.0}, Axis::ell, 0.0, 2.0, 10, 1);
    EXPECT_NEAR(t.values.front(), pi, 1e-10);
    EXPECT_NEAR(t.values.back(), 5.7634591968945497914, 1e-9);  // j_{5/2,1}
    EXPECT_TRUE(t.monotone_increasing);
    EXPECT_THROW(trace_zero({0.0, 0.0}, Axis::ell, 1.0, 0.0, 10, 1), ParameterError);
}

TEST(CommonZero, Candidate) {
    EXPECT_NEAR(common_zero_candidate({-0.4, 0.5}), -1.92, 1e-14);
    EXPECT_DOUBLE_EQ(common_zero_candidate({0.0, 1.0}), -2.0);
    EXPECT_DOUBLE_EQ(common_zero_candidate({-1.0, 0.7}), 0.0);
    EXPECT_THROW(common_zero_candidate({0.0, 0.0}), ParameterError);
}

TEST(CommonZero, EllStar) {
    auto s = find_ell_star(1.0 / 3.0, -0.2, -0.05);
    EXPECT_GT(s.value, -0.103);
    EXPECT_LT(s.value, -0.102);
    EXPECT_NEAR(s.value, -0.10260763807970373524, 1e-9);
    EXPECT_LE(s.lo, s.hi);
    EXPECT_THROW(find_ell_star(0.0), ParameterError);
}
