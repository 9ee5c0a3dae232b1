#pragma once
//
// Radial measure densities for Barut-Girardello (BG) states of SU(1,1) and
// U(N,1), Perelomov states, and the measure induced by the symplectic 2-form
// of projective Hilbert space, together with the machinery that compares
// them. All densities are with respect to the area element d(Re z) d(Im z)
// (per complex coordinate), which is the convention under which the BG
// density integrates to one.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bgkit/errors.hpp"
#include "bgkit/specfun.hpp"

namespace bgkit {

// F(t) = <z|z> as a function of t = |z|^2, with its first two derivatives
// supplied analytically.
struct NormFunction {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    double t_max = std::numeric_limits<double>::infinity();  // domain is 0 <= t < t_max
};

// 0F1(2K; t) with derivatives from d/dt 0F1(nu; t) = 0F1(nu+1; t)/nu.
inline NormFunction bg_norm(double K) {
    if (!(K > 0.0)) throw DomainError("bg_norm: K must be > 0");
    const double a = 2.0 * K;
    return NormFunction{
        "bg",
        [a](double t) { return hyp0f1(a, t); },
        [a](double t) { return hyp0f1(a + 1.0, t) / a; },
        [a](double t) { return hyp0f1(a + 2.0, t) / (a * (a + 1.0)); },
    };
}

// (1 - t)^{-2K} on the unit disc.
inline NormFunction perelomov_norm(double K) {
    if (!(K > 0.0)) throw DomainError("perelomov_norm: K must be > 0");
    const double a = 2.0 * K;
    return NormFunction{
        "perelomov",
        [a](double t) { return std::pow(1.0 - t, -a); },
        [a](double t) { return a * std::pow(1.0 - t, -a - 1.0); },
        [a](double t) { return a * (a + 1.0) * std::pow(1.0 - t, -a - 2.0); },
        1.0,
    };
}

// BG measure of SU(1,1): 2 K_{2K-1}(2r) r^{2K-1} / (pi Gamma(2K)).
inline double bg_density(double K, double r) {
    if (!(K > 0.0)) throw DomainError("bg_density: K must be > 0");
    if (!(r > 0.0)) throw DomainError("bg_density: r must be > 0");
    const double nu = 2.0 * K - 1.0;
    return 2.0 / (std::numbers::pi * gamma_fn(2.0 * K)) * bessel_k(nu, 2.0 * r) * std::pow(r, nu);
}

// BG measure of U(N,1) as a function of r = |z|: 2 r^{K-N} K_{K-N}(2r) / (pi^N Gamma(K)).
inline double un1_density(double K, int N, double r) {
    if (!(K > 0.0)) throw DomainError("un1_density: K must be > 0");
    if (N < 1) throw DomainError("un1_density: N must be >= 1");
    if (!(r > 0.0)) throw DomainError("un1_density: r must be > 0");
    const double nu = K - N;
    return 2.0 / (std::pow(std::numbers::pi, N) * gamma_fn(K)) * std::pow(r, nu) * bessel_k(nu, 2.0 * r);
}

// Perelomov measure ((2K-1)/pi) (1 - rho^2)^{2K-2}, K > 1/2.
inline double perelomov_density(double K, double rho) {
    if (!(K > 0.5)) throw DomainError("perelomov_density: K must be > 1/2");
    if (!(rho >= 0.0) || !(rho < 1.0)) throw DomainError("perelomov_density: need 0 <= rho < 1");
    return (2.0 * K - 1.0) / std::numbers::pi * std::pow(1.0 - rho * rho, 2.0 * K - 2.0);
}

// (1/F) d^2/dz* dz log F(|z|^2) = (1/F) [F'/F + t (F''F - F'^2)/F^2], t = r^2.
// The expression is regular at r = 0, so r = 0 is accepted.
inline double symplectic_density(const NormFunction& norm, double r) {
    if (!(r >= 0.0)) throw DomainError("symplectic_density: r must be >= 0");
    const double t = r * r;
    if (!(t < norm.t_max)) throw DomainError("symplectic_density: r outside the domain of " + norm.name);
    const double F = norm.value(t);
    if (!(F > 0.0)) throw DomainError("symplectic_density: norm must be positive");
    const double g1 = norm.d1(t) / F;
    const double g2 = norm.d2(t) / F;
    return (g1 + t * (g2 - g1 * g1)) / F;
}

// Closed form of the BG symplectic density in terms of 0F1(2K), 0F1(2K+1),
// 0F1(2K+2) at t = r^2:
//   (1/2K) F^{-3} [F1 F + t F2 F/(2K+1) - t F1^2/(2K)].
inline double bg_symplectic_closed(double K, double r) {
    if (!(K > 0.0)) throw DomainError("bg_symplectic_closed: K must be > 0");
    if (!(r >= 0.0)) throw DomainError("bg_symplectic_closed: r must be >= 0");
    const double a = 2.0 * K;
    const double t = r * r;
    const double F0 = hyp0f1(a, t);
    const double F1 = hyp0f1(a + 1.0, t);
    const double F2 = hyp0f1(a + 2.0, t);
    const double q1 = F1 / F0;
    const double bracket = q1 + t * (F2 / F0) / (a + 1.0) - t * q1 * q1 / a;
    return bracket / (a * F0);
}

// Hyperbolic closed forms at K = 1/4 and K = 3/4.
namespace appendix {

namespace detail {
// sinh(x) cosh(x) / x - 1 = sinh(2x)/(2x) - 1, summed as a series for small x.
inline long double sinhc2_minus_one(long double x) {
    const long double y = 2.0L * x;
    if (y < 1.0L) {
        long double term = 1.0L, sum = 0.0L;
        for (int k = 1; k < 40; ++k) {
            term *= y * y / ((2.0L * k) * (2.0L * k + 1.0L));
            sum += term;
            if (term < 1e-22L * sum) break;
        }
        return sum;
    }
    return std::sinh(y) / y - 1.0L;
}
}  // namespace detail

inline double bg_density_quarter(double r) {
    if (!(r > 0.0)) throw DomainError("appendix: r must be > 0");
    return static_cast<double>(std::exp(-2.0L * r) / (std::numbers::pi_v<long double> * r));
}

inline double bg_density_three_quarters(double r) {
    if (!(r > 0.0)) throw DomainError("appendix: r must be > 0");
    return static_cast<double>(2.0L / std::numbers::pi_v<long double> * std::exp(-2.0L * r));
}

// (1/cosh^3 2r) (sinh 2r cosh 2r / 2r + 1)
inline double symplectic_quarter(double r) {
    if (!(r > 0.0)) throw DomainError("appendix: r must be > 0");
    const long double x = 2.0L * r;
    const long double c = std::cosh(x);
    return static_cast<double>((detail::sinhc2_minus_one(x) + 2.0L) / (c * c * c));
}

// (2r / sinh^3 2r) (cosh 2r sinh 2r / 2r - 1)
inline double symplectic_three_quarters(double r) {
    if (!(r > 0.0)) throw DomainError("appendix: r must be > 0");
    const long double x = 2.0L * r;
    const long double s = std::sinh(x);
    return static_cast<double>(x / (s * s * s) * detail::sinhc2_minus_one(x));
}

// 0F1(1/2; r^2), 0F1(3/2; r^2), 0F1(5/2; r^2), 0F1(7/2; r^2) in hyperbolic form.
inline double hyp0f1_half(double r) { return std::cosh(2.0 * r); }
inline double hyp0f1_three_halves(double r) { return std::sinh(2.0 * r) / (2.0 * r); }
inline double hyp0f1_five_halves(double r) {
    const double x = 2.0 * r;
    return 3.0 / (x * x) * (std::cosh(x) - std::sinh(x) / x);
}
inline double hyp0f1_seven_halves(double r) {
    const double x = 2.0 * r;
    return 15.0 * (std::sinh(x) / std::pow(x, 3) - 3.0 * std::cosh(x) / std::pow(x, 4) +
                   3.0 * std::sinh(x) / std::pow(x, 5));
}

}  // namespace appendix

// Measure descriptors.
struct BGMeasure {
    double K;
};
struct UN1Measure {
    double K;
    int N;
};
struct PerelomovMeasure {
    double K;
};
struct SymplecticInducedMeasure {
    NormFunction norm;
};
using MeasureKind = std::variant<BGMeasure, UN1Measure, PerelomovMeasure, SymplecticInducedMeasure>;

inline void validate(const MeasureKind& kind) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BGMeasure>) {
                if (!(m.K > 0.0)) throw DomainError("BG measure: K must be > 0");
            } else if constexpr (std::is_same_v<T, UN1Measure>) {
                if (!(m.K > 0.0) || m.N < 1) throw DomainError("U(N,1) measure: need K > 0, N >= 1");
            } else if constexpr (std::is_same_v<T, PerelomovMeasure>) {
                if (!(m.K > 0.5)) throw DomainError("Perelomov measure: K must be > 1/2");
            } else {
                if (!m.norm.value || !m.norm.d1 || !m.norm.d2)
                    throw DomainError("symplectic measure: incomplete norm function");
                if (!(m.norm.value(0.0) > 0.0)) throw DomainError("symplectic measure: F(0) must be > 0");
            }
        },
        kind);
}

inline double radial_density(const MeasureKind& kind, double r) {
    return std::visit(
        [r](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BGMeasure>) return bg_density(m.K, r);
            else if constexpr (std::is_same_v<T, UN1Measure>) return un1_density(m.K, m.N, r);
            else if constexpr (std::is_same_v<T, PerelomovMeasure>) return perelomov_density(m.K, r);
            else return symplectic_density(m.norm, r);
        },
        kind);
}

// Leading small-r behaviour of both densities, each as c0 [1 + c2 r^2].
struct NearOriginPair {
    double omega_approx;
    double bg_approx;
};

inline double omega_r2_coefficient(double K) {
    const double a = 2.0 * K;
    return -(a + 3.0) / (a * (a + 1.0));
}

inline double bg_r2_coefficient(double K) {
    if (!(K > 0.5) || K == 1.0) throw DomainError("bg near-origin expansion needs K > 1/2, K != 1");
    return -1.0 / (2.0 * K - 2.0);
}

inline NearOriginPair near_origin_pair(double K, double r) {
    if (!(K > 0.5) || K == 1.0) throw DomainError("near_origin_pair: need K > 1/2 and K != 1");
    const double r2 = r * r;
    return {
        1.0 / (2.0 * K) * (1.0 + omega_r2_coefficient(K) * r2),
        1.0 / ((2.0 * K - 1.0) * std::numbers::pi) * (1.0 + bg_r2_coefficient(K) * r2),
    };
}

// Linear least squares of values ~ sum_j c_j r^{e_j}.
struct PowerFit {
    std::vector<double> exponents;
    std::vector<double> coeffs;
    double residual = 0.0;  // max |fit - data| / |c0|

    double coeff(double exponent) const {
        for (std::size_t i = 0; i < exponents.size(); ++i)
            if (std::abs(exponents[i] - exponent) < 1e-12) return coeffs[i];
        throw DomainError("PowerFit: exponent not in basis");
    }
    // r^2 coefficient relative to the constant term.
    double normalized_c2() const { return coeff(2.0) / coeff(0.0); }
};

inline PowerFit fit_powers(const std::vector<double>& r, const std::vector<double>& y,
                           std::vector<double> exponents) {
    if (r.size() != y.size()) throw DomainError("fit_powers: size mismatch");
    if (r.size() < exponents.size()) throw DomainError("fit_powers: fewer points than basis functions");
    std::sort(exponents.begin(), exponents.end());
    const Eigen::Index m = static_cast<Eigen::Index>(r.size());
    const Eigen::Index k = static_cast<Eigen::Index>(exponents.size());
    Eigen::MatrixXd A(m, k);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) A(i, j) = std::pow(r[i], exponents[j]);
        b(i) = y[i];
    }
    const Eigen::VectorXd scale = A.cwiseAbs().colwise().maxCoeff().transpose();
    const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
    const Eigen::VectorXd cs = As.colPivHouseholderQr().solve(b);
    const Eigen::VectorXd c = cs.cwiseQuotient(scale);

    PowerFit fit;
    fit.exponents = exponents;
    fit.coeffs.assign(c.data(), c.data() + k);
    const double c0 = std::abs(fit.coeff(0.0));
    fit.residual = (A * c - b).cwiseAbs().maxCoeff() / (c0 > 0.0 ? c0 : 1.0);
    return fit;
}

// Small-r exponents of r^{2K-1} K_{2K-1}(2r): the analytic series r^{2k} and
// the branch r^{4K-2+2k}. Empty when 2K-1 is an integer (logarithmic terms).
inline std::vector<double> bg_expansion_exponents(double K, double max_exponent = 6.0) {
    const double nu = 2.0 * K - 1.0;
    if (std::abs(nu - std::round(nu)) < 1e-9) return {};
    std::vector<double> e;
    for (double p = 0.0; p <= max_exponent + 1e-12; p += 2.0) e.push_back(p);
    for (double p = 2.0 * nu; p <= max_exponent + 1e-12; p += 2.0) e.push_back(p);
    std::sort(e.begin(), e.end());
    return e;
}

inline std::vector<double> omega_expansion_exponents(double max_exponent = 6.0) {
    std::vector<double> e;
    for (double p = 0.0; p <= max_exponent + 1e-12; p += 2.0) e.push_back(p);
    return e;
}

enum class Verdict { Same, Different, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Same: return "SAME";
        case Verdict::Different: return "DIFFERENT";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

struct CompareOptions {
    bool normalize = true;
    bool fit = false;
    double same_tol = 1e-10;       // shape deviation at or below this: SAME
    double different_tol = 1e-2;   // shape deviation above this: DIFFERENT
};

struct ComparisonReport {
    std::string label_a, label_b;
    std::vector<double> grid;
    std::vector<double> a, b;  // normalized to 1 at grid[0] when requested
    std::vector<double> ratio;
    double max_abs_deviation = 0.0;  // max_i |ratio_i / ratio_0 - 1|
    std::optional<PowerFit> fit_a, fit_b;
    Verdict verdict = Verdict::Inconclusive;
};

namespace detail {

inline void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("compare: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("compare: grid must be strictly increasing");
}

inline ComparisonReport finish_comparison(ComparisonReport rep, const CompareOptions& opt) {
    const std::size_t n = rep.grid.size();
    if (opt.normalize) {
        const double a0 = rep.a.front(), b0 = rep.b.front();
        for (std::size_t i = 0; i < n; ++i) {
            rep.a[i] /= a0;
            rep.b[i] /= b0;
        }
    }
    rep.ratio.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.ratio[i] = rep.a[i] / rep.b[i];
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(rep.ratio[i] / rep.ratio[0] - 1.0));
    rep.max_abs_deviation = dev;

    bool coeff_differ = false;
    if (rep.fit_a && rep.fit_b) {
        const double resid = std::max(rep.fit_a->residual, rep.fit_b->residual);
        coeff_differ = std::abs(rep.fit_a->normalized_c2() - rep.fit_b->normalized_c2()) > 10.0 * resid;
    }
    if (coeff_differ || dev > opt.different_tol) rep.verdict = Verdict::Different;
    else if (dev <= opt.same_tol) rep.verdict = Verdict::Same;
    else rep.verdict = Verdict::Inconclusive;
    return rep;
}

}  // namespace detail

// BG density against the symplectic-induced density of the BG norm.
inline ComparisonReport compare_measures(double K, const std::vector<double>& grid,
                                         const CompareOptions& opt = {}) {
    detail::check_grid(grid);
    if (!(grid.front() > 0.0)) throw DomainError("compare_measures: grid must lie in (0, r_max]");
    ComparisonReport rep;
    rep.label_a = "bg";
    rep.label_b = "omega";
    rep.grid = grid;
    for (double r : grid) {
        rep.a.push_back(bg_density(K, r));
        rep.b.push_back(bg_symplectic_closed(K, r));
    }
    if (opt.fit) {
        const auto eb = bg_expansion_exponents(K);
        if (eb.empty()) throw DomainError("compare_measures: fit needs non-integer 2K-1");
        rep.fit_a = fit_powers(grid, rep.a, eb);
        rep.fit_b = fit_powers(grid, rep.b, omega_expansion_exponents());
    }
    return detail::finish_comparison(std::move(rep), opt);
}

// Perelomov density against the symplectic-induced density of the Perelomov norm.
inline ComparisonReport compare_perelomov(double K, const std::vector<double>& rho_grid,
                                          const CompareOptions& opt = {}) {
    detail::check_grid(rho_grid);
    const NormFunction norm = perelomov_norm(K);
    ComparisonReport rep;
    rep.label_a = "perelomov";
    rep.label_b = "omega";
    rep.grid = rho_grid;
    for (double rho : rho_grid) {
        rep.a.push_back(perelomov_density(K, rho));
        rep.b.push_back(symplectic_density(norm, rho));
    }
    if (opt.fit) {
        rep.fit_a = fit_powers(rho_grid, rep.a, omega_expansion_exponents());
        rep.fit_b = fit_powers(rho_grid, rep.b, omega_expansion_exponents());
    }
    return detail::finish_comparison(std::move(rep), opt);
}

}  // namespace bgkit
