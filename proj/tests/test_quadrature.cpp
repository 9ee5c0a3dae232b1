#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bgkit/moments.hpp"
#include "bgkit/quadrature.hpp"
#include "oracles.hpp"

using namespace bgkit;
using oracle::rel_err;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (int n : {1, 2, 5, 16, 32}) {
        const auto rule = gauss_legendre(n);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        EXPECT_NEAR(wsum, 2.0, 1e-14);
        // x^{2n-2} integrates to 2/(2n-1)
        double m = 0.0;
        for (int i = 0; i < n; ++i) m += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 2);
        EXPECT_NEAR(m, 2.0 / (2 * n - 1), 1e-14) << n;
    }
}

TEST(IntegrateRadial, Exponential) {
    const auto q = integrate_radial([](double r) { return std::exp(-2.0 * r); });
    EXPECT_NEAR(q.value, 0.5, 1e-14);
    EXPECT_GE(q.err_bound, std::abs(q.value - 0.5));
}

TEST(IntegrateRadial, IntegrablePowerSingularity) {
    // int_0^inf r^{-1/2} e^{-r} dr = sqrt(pi)
    const auto q = integrate_radial([](double r) { return std::exp(-r) / std::sqrt(r); }, {}, -0.5);
    EXPECT_LT(rel_err(q.value, std::sqrt(std::numbers::pi)), 1e-12);
    EXPECT_GE(q.err_bound, std::abs(q.value - std::sqrt(std::numbers::pi)));
    // Mismatched hint still converges through the graded panels.
    const auto q2 = integrate_radial([](double r) { return std::exp(-r) / std::sqrt(r); }, {}, -0.4);
    EXPECT_LT(rel_err(q2.value, std::sqrt(std::numbers::pi)), 1e-10);
}

TEST(IntegrateRadial, NormalizationOfBgDensity) {
    // int_0^inf 4/Gamma(2K) K_{2K-1}(2r) r^{2K} dr = 1 at K = 0.75
    const double K = 0.75;
    auto f = [K](double r) { return 4.0 / gamma_fn(2 * K) * bessel_k(2 * K - 1, 2 * r) * std::pow(r, 2 * K); };
    const auto q = integrate_radial(f);
    EXPECT_NEAR(q.value, 1.0, 1e-12);
}

TEST(IntegrateRadial, SlowDecayFailsAtCap) {
    try {
        integrate_radial([](double r) { return 1.0 / (1.0 + r * r); });
        FAIL() << "expected QuadratureError";
    } catch (const QuadratureError& e) {
        // best estimate is int_0^200 = atan(200)
        EXPECT_NEAR(e.best_estimate(), std::atan(200.0), 1e-9);
        EXPECT_GT(e.err_bound(), 0.0);
    }
}

TEST(IntegrateRadial, RejectsNonIntegrableHintAndBadSpec) {
    EXPECT_THROW(integrate_radial([](double r) { return 1.0 / r; }, {}, -1.0), DomainError);
    QuadratureSpec bad;
    bad.panel_order = 7;
    EXPECT_THROW(integrate_radial([](double r) { return std::exp(-r); }, bad), DomainError);
}

TEST(IntegrateRadial, Deterministic) {
    auto f = [](double r) { return std::pow(r, 3.3) * bessel_k(0.7, 2 * r); };
    const auto a = integrate_radial(f, {}, 3.3 - 0.7);
    const auto b = integrate_radial(f, {}, 3.3 - 0.7);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.err_bound, b.err_bound);
}

TEST(OrthantAngle, MatchesBetaFunction) {
    for (double a : {1.0, 3.0, 4.5})
        for (double b : {1.0, 2.0, 5.0}) {
            const double beta = std::tgamma((a + 1) / 2) * std::tgamma((b + 1) / 2) / std::tgamma((a + b) / 2 + 1);
            EXPECT_LT(rel_err(orthant_angle_integral(a, b), 0.5 * beta), 1e-13);
        }
}

TEST(BgMoment, Normalization) {
    for (double K : {0.25, 0.75, 1.0, 2.5}) {
        const auto m = bg_moment(K, 0);
        EXPECT_NEAR(m.value, 1.0, 1e-10) << K;
        EXPECT_GE(m.err_bound, std::abs(m.value - 1.0)) << K;
    }
}

TEST(BgMoment, GammaIdentity) {
    const auto m = bg_moment(0.75, 3);
    EXPECT_DOUBLE_EQ(m.expected, 78.75);
    EXPECT_LT(m.rel_err(), 1e-10);
}

TEST(BgMoment, FullGrid) {
    for (double K : {0.25, 0.5, 0.75, 1.0, 2.5}) {
        for (unsigned n = 0; n <= 8; ++n) {
            const auto m = bg_moment(K, n);
            EXPECT_LT(m.rel_err(), 1e-10) << "K=" << K << " n=" << n;
            EXPECT_GE(m.err_bound, std::abs(m.value - m.expected)) << "K=" << K << " n=" << n;
        }
    }
}

TEST(Un1Moment, ReducesToBgMoment) {
    for (double Kbg : {0.3, 0.75, 1.6}) {
        for (unsigned n : {0u, 2u, 5u}) {
            const auto a = un1_moment(2 * Kbg, 1, {n});
            const auto b = bg_moment(Kbg, n);
            EXPECT_LT(rel_err(a.value, b.value), 1e-11);
            EXPECT_DOUBLE_EQ(a.expected, b.expected);
        }
    }
}

TEST(Un1Moment, TwoDimensional) {
    const auto m0 = un1_moment(1.0, 2, {0, 0});
    EXPECT_NEAR(m0.value, 1.0, 1e-10);
    const auto m = un1_moment(2.7, 2, {1, 2});
    EXPECT_NEAR(m.expected, 93.906, 1e-9);
    EXPECT_LT(m.rel_err(), 1e-8);
}

TEST(Un1Moment, NonIntegerKGrid) {
    for (double K : {0.3, 1.0, 2.7}) {
        for (unsigned n1 = 0; n1 <= 4; ++n1) {
            for (unsigned n2 = 0; n1 + n2 <= 4; ++n2) {
                const auto m = un1_moment(K, 2, {n1, n2});
                EXPECT_LT(m.rel_err(), 1e-8) << K << " " << n1 << " " << n2;
                EXPECT_GE(m.err_bound, std::abs(m.value - m.expected));
            }
        }
    }
}

TEST(Un1Moment, ThreeDimensional) {
    const auto m = un1_moment(1.4, 3, {1, 0, 2});
    EXPECT_LT(m.rel_err(), 1e-8);
}

TEST(Iwanami, Examples) {
    const auto c = iwanami_check(0.5, 0.5, 1.0);
    EXPECT_DOUBLE_EQ(c.rhs, 1.0);
    EXPECT_LT(c.rel_err, 1e-10);
    EXPECT_LT(iwanami_check(0.75, 0.25, 1.0).rel_err, 1e-10);
    const auto d = iwanami_check(0.6, 0.35, 1.0);
    EXPECT_LT(rel_err(d.rhs, std::tgamma(2.2) * std::tgamma(1.7)), 1e-15);
    EXPECT_LT(d.rel_err, 1e-10);
}

TEST(Iwanami, SymmetricInAlphaBeta) {
    const auto a = iwanami_check(0.9, 0.2, 0.7);
    const auto b = iwanami_check(0.2, 0.9, 0.7);
    EXPECT_EQ(a.rhs, b.rhs);
    EXPECT_LT(rel_err(a.lhs, b.lhs), 1e-13);
}

TEST(Iwanami, OutsideConvergenceDomain) {
    EXPECT_THROW(iwanami_check(-1.0, 0.5, 1.0), DomainError);
}
