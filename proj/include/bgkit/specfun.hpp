#pragma once
//
// Special functions used throughout bgkit: Pochhammer symbol, Gamma, the
// hypergeometric 0F1 and the modified Bessel functions I_nu, K_nu of real
// order. Everything is binary64 and a pure function of its arguments.
//

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "bgkit/errors.hpp"

namespace bgkit {

// Stopping rule for the ascending series below. A series stops once two
// consecutive terms are <= rel_tol * |partial sum|, or throws at max_terms.
struct SeriesControl {
    double rel_tol = 1e-16;
    int max_terms = 500;

    void validate() const {
        if (!(rel_tol > 0.0)) throw DomainError("SeriesControl: rel_tol must be > 0");
        if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
    }
};

// Rising factorial (a)_n = a (a+1) ... (a+n-1). Overflows to +inf for huge n.
inline double pochhammer(double a, unsigned n) {
    double p = 1.0;
    for (unsigned k = 0; k < n; ++k) p *= a + static_cast<double>(k);
    return p;
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

inline double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
    if (x < 0.5) {
        // Reflection keeps the argument of the library call in the right half plane.
        const double s = std::sin(std::numbers::pi * x);
        return std::numbers::pi / (s * std::tgamma(1.0 - x));
    }
    return std::tgamma(x);
}

inline double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be > 0");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes the global signgam
#else
    return std::lgamma(x);
#endif
}

// 1/Gamma(x), entire: zero at the poles of Gamma.
inline double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    return 1.0 / gamma_fn(x);
}

namespace detail {

// Taylor coefficients of 1/Gamma(1+x) about x = 0.
inline constexpr std::array<double, 27> kRecipGammaTaylor = {
    1.0,
    0.5772156649015328606065,
    -0.655878071520253881077,
    -0.042002635034095235529,
    0.1665386113822914895017,
    -0.04219773455554433674821,
    -0.009621971527876973562115,
    0.007218943246663099542395,
    -0.001165167591859065112114,
    -0.0002152416741149509728157,
    0.0001280502823881161861532,
    -0.00002013485478078823865569,
    -0.000001250493482142670657345,
    0.000001133027231981695882374,
    -2.05633841697760710345e-7,
    6.116095104481415817862e-9,
    5.002007644469222930056e-9,
    -1.181274570487020144588e-9,
    1.043426711691100510492e-10,
    7.78226343990507125405e-12,
    -3.696805618642205708188e-12,
    5.100370287454475979015e-13,
    -2.058326053566506783222e-14,
    -5.34812253942301798237e-15,
    1.226778628238260790159e-15,
    -1.181259301697458769514e-16,
    1.18669225475160033258e-18,
};

// gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
// for |mu| <= 1/2, without the cancellation of the direct quotient.
struct TemmeGammas {
    double gam1, gam2, gampl, gammi;
};

inline TemmeGammas temme_gammas(double mu) {
    const auto& c = kRecipGammaTaylor;
    double odd = 0.0, even = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        if (k % 2 == 1) odd = odd * mu * mu + c[k];
        else even = even * mu * mu + c[k];
    }
    // 1/Gamma(1+mu) = even(mu^2) + mu * odd(mu^2)
    TemmeGammas g{};
    g.gam1 = -odd;
    g.gam2 = even;
    g.gampl = even + mu * odd;
    g.gammi = even - mu * odd;
    return g;
}

inline bool small_relative(double term, double sum, double tol) {
    return std::abs(term) <= tol * std::abs(sum);
}

}  // namespace detail

// 0F1(nu; z) = sum_n z^n / ((nu)_n n!), nu > 0.
inline std::complex<double> hyp0f1(double nu, std::complex<double> z, const SeriesControl& ctl = {}) {
    ctl.validate();
    if (!(nu > 0.0)) throw DomainError("hyp0f1: nu must be > 0");
    std::complex<double> term = 1.0, sum = 1.0;
    int quiet = 0;
    const double az = std::abs(z);
    for (int n = 0; n < ctl.max_terms; ++n) {
        const double denom = (nu + n) * (n + 1.0);
        term *= z / denom;
        sum += term;
        const bool shrinking = az < denom;
        if (shrinking && std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
            if (++quiet == 2) return sum;
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("hyp0f1: no convergence within max_terms");
}

inline double hyp0f1(double nu, double t, const SeriesControl& ctl = {}) {
    return hyp0f1(nu, std::complex<double>(t, 0.0), ctl).real();
}

// d/dz 0F1(nu; z) = 0F1(nu+1; z) / nu
inline std::complex<double> hyp0f1_derivative(double nu, std::complex<double> z,
                                              const SeriesControl& ctl = {}) {
    if (!(nu > 0.0)) throw DomainError("hyp0f1_derivative: nu must be > 0");
    return hyp0f1(nu + 1.0, z, ctl) / nu;
}

inline double hyp0f1_derivative(double nu, double t, const SeriesControl& ctl = {}) {
    return hyp0f1_derivative(nu, std::complex<double>(t, 0.0), ctl).real();
}

// I_nu(x) from the ascending series (x/2)^nu sum (x/2)^{2n} / (n! Gamma(nu+n+1)).
inline double bessel_i(double nu, double x, const SeriesControl& ctl = {}) {
    ctl.validate();
    if (x < 0.0) throw DomainError("bessel_i: x must be >= 0");
    if (nu < 0.0 && nu == std::floor(nu)) nu = -nu;  // I_{-m} = I_m
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw DomainError("bessel_i: negative non-integer order is singular at x = 0");
    }
    const double h = 0.5 * x;
    const double q = h * h;
    double term = std::pow(h, nu) * rgamma(nu + 1.0);
    double sum = term;
    int quiet = 0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        const double denom = (n + 1.0) * (nu + n + 1.0);
        term *= q / denom;
        sum += term;
        if (q < std::abs(denom) && detail::small_relative(term, sum, ctl.rel_tol)) {
            if (++quiet == 2) return sum;
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("bessel_i: no convergence within max_terms");
}

namespace detail {

// sum_k (-1)^k a_k(nu) / x^k with a_k = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k).
// Returns nullopt when the terms stop shrinking before reaching tol.
inline std::optional<double> hankel_asymptotic_sum(double nu, double x, double sign, double tol) {
    const double mu4 = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0, prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= sign * (mu4 - odd * odd) / (8.0 * k * x);
        if (std::abs(term) > std::abs(prev)) return std::nullopt;
        sum += term;
        if (std::abs(term) <= tol * std::abs(sum)) return sum;
        prev = term;
    }
    return std::nullopt;
}

}  // namespace detail

// e^{-x} I_nu(x), usable where I_nu itself overflows.
inline double bessel_i_scaled(double nu, double x, const SeriesControl& ctl = {}) {
    if (x > 30.0) {
        if (auto s = detail::hankel_asymptotic_sum(nu, x, -1.0, 1e-16))
            return *s / std::sqrt(2.0 * std::numbers::pi * x);
    }
    return std::exp(-x) * bessel_i(nu, x, ctl);
}

// Individual evaluation routes for K_nu. bessel_k() picks among them; the
// others are kept for cross-checking in their overlap regions.
namespace bessel_k_branch {

// (pi/2) (I_{-nu} - I_nu) / sin(nu pi), non-integer nu. Loses digits as x grows
// (the difference cancels like e^{2x}) and as nu approaches an integer.
inline double reflection(double nu, double x, const SeriesControl& ctl = {}) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0");
    const double s = std::sin(nu * std::numbers::pi);
    if (nu == std::round(nu) || s == 0.0)
        throw DomainError("bessel_k reflection route: integer order");
    return 0.5 * std::numbers::pi * (bessel_i(-nu, x, ctl) - bessel_i(nu, x, ctl)) / s;
}

// Logarithmic ascending series for integer order m >= 0.
inline double integer_order(int m, double x, const SeriesControl& ctl = {}) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0");
    if (m < 0) m = -m;
    ctl.validate();
    const double h = 0.5 * x;
    const double q = h * h;
    double finite = 0.0;
    if (m > 0) {
        // 1/2 (x/2)^{-m} sum_{k<m} (m-k-1)!/k! (-q)^k
        double c = std::tgamma(static_cast<double>(m));  // (m-1)!
        double pw = 1.0;
        for (int k = 0; k < m; ++k) {
            finite += c * pw;
            pw *= -q;
            if (k + 1 < m) c *= 1.0 / ((m - k - 1.0) * (k + 1.0));
        }
        finite *= 0.5 * std::pow(h, -static_cast<double>(m));
    }
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    const double log_part = -sgn * std::log(h) * bessel_i(m, x, ctl);

    // (-1)^m 1/2 (x/2)^m sum_k (psi(k+1) + psi(m+k+1)) q^k / (k! (m+k)!)
    constexpr double euler = std::numbers::egamma;
    double psi_k = -euler;
    double psi_mk = -euler;
    for (int j = 1; j <= m; ++j) psi_mk += 1.0 / j;
    double w = 1.0 / std::tgamma(m + 1.0);
    double sum = (psi_k + psi_mk) * w;
    int quiet = 0;
    for (int k = 1; k < ctl.max_terms; ++k) {
        w *= q / (k * (m + static_cast<double>(k)));
        psi_k += 1.0 / k;
        psi_mk += 1.0 / (m + static_cast<double>(k));
        const double term = (psi_k + psi_mk) * w;
        sum += term;
        if (q < k * (m + static_cast<double>(k)) && detail::small_relative(term, sum, ctl.rel_tol)) {
            if (++quiet == 2) {
                return finite + log_part + sgn * 0.5 * std::pow(h, m) * sum;
            }
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("bessel_k integer-order series: no convergence");
}

// Large-argument expansion sqrt(pi/2x) e^{-x} sum a_k(nu)/x^k, returned
// scaled by e^{x}. nullopt when the series cannot reach tol at this x.
inline std::optional<double> asymptotic_scaled(double nu, double x, double tol = 1e-16) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0");
    auto s = detail::hankel_asymptotic_sum(nu, x, 1.0, tol);
    if (!s) return std::nullopt;
    return std::sqrt(std::numbers::pi / (2.0 * x)) * *s;
}

// Temme's series (x <= 2) or Steed's continued fraction (x > 2) for the
// reduced order |mu| <= 1/2, then forward recurrence to nu. Returns e^x K_nu(x).
inline double temme_steed_scaled(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0");
    nu = std::abs(nu);
    constexpr double eps = 1e-17;
    constexpr int max_iter = 100000;
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    const double mu2 = mu * mu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    double rkmu = 0.0, rk1 = 0.0;

    if (x <= 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = std::numbers::pi * mu;
        const double fact = std::abs(pimu) < 1e-300 ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = mu * d;
        const double fact2 = std::abs(e) < 1e-300 ? 1.0 : std::sinh(e) / e;
        const auto g = detail::temme_gammas(mu);
        double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / g.gampl;
        double q = 0.5 / (e * g.gammi);
        double c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i <= max_iter; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
            c *= d / i;
            p /= i - mu;
            q /= i + mu;
            const double del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * eps) break;
        }
        if (i > max_iter) throw ConvergenceError("bessel_k: Temme series failed");
        const double ex = std::exp(x);
        rkmu = sum * ex;
        rk1 = sum1 * xi2 * ex;
    } else {
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double h = d, delh = d;
        double q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - mu2;
        double q = a1, c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        int i = 2;
        for (; i <= max_iter; ++i) {
            a -= 2.0 * (i - 1);
            c = -a * c / i;
            const double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < eps) break;
        }
        if (i > max_iter) throw ConvergenceError("bessel_k: Steed continued fraction failed");
        h = a1 * h;
        rkmu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
        rk1 = rkmu * (mu + x + 0.5 - h) * xi;
    }
    for (int i = 1; i <= nl; ++i) {
        const double next = (mu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = next;
    }
    return rkmu;
}

}  // namespace bessel_k_branch

// e^{x} K_nu(x), x > 0.
inline double bessel_k_scaled(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0");
    nu = std::abs(nu);
    if (x > 10.0) {
        if (auto v = bessel_k_branch::asymptotic_scaled(nu, x)) return *v;
    }
    return bessel_k_branch::temme_steed_scaled(nu, x);
}

// K_nu(x), x > 0; even in nu.
inline double bessel_k(double nu, double x) {
    return std::exp(-x) * bessel_k_scaled(nu, x);
}

}  // namespace bgkit
