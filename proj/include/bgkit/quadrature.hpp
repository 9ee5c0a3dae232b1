#pragma once
//
// Deterministic Gauss-Legendre panel quadrature on [0, inf) for integrands
// with an integrable power-law endpoint at r = 0 and exponential decay.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bgkit/errors.hpp"

namespace bgkit {

struct QuadratureSpec {
    double rel_tol = 1e-11;
    int panel_order = 32;   // Gauss nodes per panel; the embedded check uses half as many
    double r_start = 8.0;   // first r_max, doubled until the tail bound is met
    double r_cap = 200.0;
    double abs_tol = 0.0;   // absolute floor for integrals that may vanish

    void validate() const {
        if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
        if (panel_order < 4 || panel_order % 2 != 0)
            throw DomainError("QuadratureSpec: panel_order must be even and >= 4");
        if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be >= 0");
        if (!(r_start > 1.0) || !(r_cap >= r_start))
            throw DomainError("QuadratureSpec: need 1 < r_start <= r_cap");
    }
};

struct QuadResult {
    double value = 0.0;
    double err_bound = 0.0;  // panel error estimates + tail bound + roundoff allowance
    double r_max = 0.0;
    int panels = 0;
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace detail {

// Neumaier summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
        else comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <class F>
double apply_rule(const GaussRule& rule, F& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

// Adaptive panel integration with bisection; panels are visited left to right
// so the summation order depends only on the integrand.
class PanelIntegrator {
public:
    PanelIntegrator(const QuadratureSpec& spec)
        : spec_(spec), hi_(gauss_legendre(spec.panel_order)), lo_(gauss_legendre(spec.panel_order / 2)) {}

    template <class F>
    void integrate(F& f, double a, double b, int depth = 0) {
        const double qh = apply_rule(hi_, f, a, b);
        const double ql = apply_rule(lo_, f, a, b);
        const double est = std::abs(qh - ql);
        const double scale = std::max(std::abs(qh), std::abs(total_.value()));
        if (est <= 0.01 * std::max(spec_.rel_tol * scale, spec_.abs_tol) || depth >= 40 || !(est == est)) {
            total_.add(qh);
            err_ += est;
            magnitude_ += std::abs(qh);
            ++panels_;
            return;
        }
        const double m = 0.5 * (a + b);
        integrate(f, a, m, depth + 1);
        integrate(f, m, b, depth + 1);
    }

    void add_error(double e) { err_ += e; }
    // error budget for a total of the current magnitude
    double budget() const { return std::max(spec_.rel_tol * std::abs(value()), spec_.abs_tol); }
    double value() const { return total_.value(); }
    double err_bound() const {
        return err_ + 100.0 * std::numeric_limits<double>::epsilon() * magnitude_;
    }
    int panels() const { return panels_; }

private:
    const QuadratureSpec& spec_;
    GaussRule hi_, lo_;
    CompensatedSum total_;
    double err_ = 0.0;
    double magnitude_ = 0.0;
    int panels_ = 0;
};

}  // namespace detail

// Adaptive Gauss-Legendre on a finite interval.
template <class F>
QuadResult integrate_interval(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    detail::PanelIntegrator pi(spec);
    pi.integrate(f, a, b);
    QuadResult res{pi.value(), pi.err_bound(), b, pi.panels()};
    if (res.err_bound > pi.budget() && res.err_bound > 1e-300)
        throw QuadratureError("integrate_interval: tolerance not met", res.value, res.err_bound);
    return res;
}

// int_0^inf f(r) dr for f continuous on (0, inf), f(r) ~ r^leading_exponent at
// the origin (leading_exponent > -1), and eventually log-concave decay.
//
// [0, 1] is mapped by r = u^p with p = 1/(leading_exponent + 1), which turns
// the leading power into a constant, then covered by geometrically graded
// panels toward u = 0. [1, r_max] uses unit panels; r_max doubles from
// spec.r_start until the tail bound |f(R)| / kappa drops below tolerance,
// where kappa is the decay rate of f over [R-1, R].
template <class F>
QuadResult integrate_radial(F&& f, const QuadratureSpec& spec = {}, double leading_exponent = 0.0) {
    spec.validate();
    if (!(leading_exponent > -1.0))
        throw DomainError("integrate_radial: integrand must be integrable at 0 (exponent > -1)");
    detail::PanelIntegrator pi(spec);

    const double p = 1.0 / (leading_exponent + 1.0);
    auto g = [&](double u) {
        if (p == 1.0) return f(u);
        return f(std::pow(u, p)) * p * std::pow(u, p - 1.0);
    };
    constexpr double grade = 0.2;
    double hi = 1.0;
    for (int k = 0; k < 2000; ++k) {
        const double lo = hi * grade;
        pi.integrate(g, lo, hi);
        hi = lo;
        const double rest = 2.0 * std::abs(g(hi)) * hi;
        if (rest <= 1e-3 * pi.budget() || hi < 1e-300) {
            pi.add_error(rest);
            break;
        }
    }

    double r = 1.0;
    double r_max = spec.r_start;
    for (;;) {
        for (; r < r_max; r += 1.0) pi.integrate(f, r, r + 1.0);
        const double fr = std::abs(f(r_max));
        const double fprev = std::abs(f(r_max - 1.0));
        double tail = 0.0;
        if (fr > 0.0) {
            const double kappa = std::log(fprev / fr);
            tail = kappa > 0.0 ? fr / kappa : std::numeric_limits<double>::infinity();
        }
        if (tail <= 0.1 * pi.budget()) {
            pi.add_error(tail);
            break;
        }
        if (r_max >= spec.r_cap) {
            throw QuadratureError("integrate_radial: tail bound not met at r_cap = " +
                                      std::to_string(spec.r_cap),
                                  pi.value(), pi.err_bound() + tail);
        }
        r_max = std::min(2.0 * r_max, spec.r_cap);
    }

    QuadResult res{pi.value(), pi.err_bound(), r_max, pi.panels()};
    if (res.err_bound > pi.budget())
        throw QuadratureError("integrate_radial: tolerance not met", res.value, res.err_bound);
    return res;
}

}  // namespace bgkit
