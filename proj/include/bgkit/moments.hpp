#pragma once
//
// Resolution-of-unity moment checks and the Bessel-K Mellin integral, all
// computed by radial quadrature.
//

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bgkit/measures.hpp"
#include "bgkit/quadrature.hpp"
#include "bgkit/specfun.hpp"

namespace bgkit {

struct MomentResult {
    double value = 0.0;
    double err_bound = 0.0;
    double expected = 0.0;  // closed-form contract
    double rel_err() const { return std::abs(value - expected) / std::abs(expected); }
};

// Exponent a of the small-r behaviour r^a of r^{p} * r^{nu} K_{nu}(2r)
// (|nu| branch dominates; a logarithm at nu = 0 does not change a).
inline double bessel_weight_leading_exponent(double power, double nu) {
    return power + nu - std::abs(nu);
}

// 2 pi int_0^inf bg_density(K, r) r^{2n} r dr; contract n! (2K)_n.
inline MomentResult bg_moment(double K, unsigned n, const QuadratureSpec& spec = {}) {
    if (!(K > 0.0)) throw DomainError("bg_moment: K must be > 0");
    const double nu = 2.0 * K - 1.0;
    const double prefactor = 4.0 / gamma_fn(2.0 * K);  // 2 pi * 2 / (pi Gamma(2K))
    const double power = 2.0 * n + 1.0;
    auto f = [&](double r) { return prefactor * std::pow(r, power + nu) * bessel_k(nu, 2.0 * r); };
    const auto q = integrate_radial(f, spec, bessel_weight_leading_exponent(power, nu));
    return {q.value, q.err_bound, std::tgamma(n + 1.0) * pochhammer(2.0 * K, n)};
}

// int_0^{pi/2} cos^a(phi) sin^b(phi) dphi by Gauss-Legendre.
inline double orthant_angle_integral(double a, double b, const QuadratureSpec& spec = {}) {
    auto f = [&](double phi) { return std::pow(std::cos(phi), a) * std::pow(std::sin(phi), b); };
    return integrate_interval(f, 0.0, 0.5 * std::numbers::pi, spec).value;
}

// int over C^N of un1_density(K, N, |z|) prod |z_a|^{2 n_a}; contract n_1!...n_N! (K)_{|n|}.
// Each coordinate is taken in polar form; the radii are then split into
// |z| and N-1 orthant angles.
inline MomentResult un1_moment(double K, int N, const std::vector<unsigned>& n,
                               const QuadratureSpec& spec = {}) {
    if (!(K > 0.0)) throw DomainError("un1_moment: K must be > 0");
    if (N < 1 || static_cast<int>(n.size()) != N) throw DomainError("un1_moment: need n of length N >= 1");

    double angular = 1.0;
    double accumulated = 0.0;  // sum of r_a exponents so far
    unsigned total = 0;
    double factorials = 1.0;
    for (int j = 0; j < N; ++j) {
        const double p = 2.0 * n[j] + 1.0;
        if (j > 0) angular *= orthant_angle_integral(accumulated + (j - 1), p, spec);
        accumulated += p;
        total += n[j];
        factorials *= std::tgamma(n[j] + 1.0);
    }

    const double nu = K - N;
    const double prefactor = std::pow(2.0 * std::numbers::pi, N) * 2.0 /
                             (std::pow(std::numbers::pi, N) * gamma_fn(K));
    const double power = accumulated + N - 1.0;
    auto f = [&](double r) { return prefactor * std::pow(r, power + nu) * bessel_k(nu, 2.0 * r); };
    const auto q = integrate_radial(f, spec, bessel_weight_leading_exponent(power, nu));
    return {q.value * angular, q.err_bound * angular, factorials * pochhammer(K, total)};
}

struct MellinCheck {
    double lhs = 0.0;
    double err_bound = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
};

// int_0^inf 2 x^{alpha+beta} K_{2(alpha-beta)}(2 sqrt x) x^{s-1} dx = Gamma(2 alpha + s) Gamma(2 beta + s),
// evaluated with x = r^2.
inline MellinCheck iwanami_check(double alpha, double beta, double s, const QuadratureSpec& spec = {}) {
    if (!(2.0 * alpha + s > 0.0) || !(2.0 * beta + s > 0.0))
        throw DomainError("iwanami_check: need 2 alpha + s > 0 and 2 beta + s > 0");
    const double nu = 2.0 * (alpha - beta);
    const double power = 2.0 * (alpha + beta) + 2.0 * s - 1.0;
    auto f = [&](double r) { return 4.0 * std::pow(r, power) * bessel_k(nu, 2.0 * r); };
    const auto q = integrate_radial(f, spec, power - std::abs(nu));
    MellinCheck c;
    c.lhs = q.value;
    c.err_bound = q.err_bound;
    c.rhs = gamma_fn(2.0 * alpha + s) * gamma_fn(2.0 * beta + s);
    c.rel_err = std::abs(c.lhs - c.rhs) / std::abs(c.rhs);
    return c;
}

}  // namespace bgkit
