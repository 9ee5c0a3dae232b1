#pragma once
//
// Truncated analytic representation of su(1,1): states are polynomials of
// degree <= T stored as monomial coefficients, and the generators act as
//   K_+ = z,  K_3 = z d/dz + K,  K_- = z d^2/dz^2 + 2K d/dz.
//
// Everything is templated on the scalar type so that the algebraic
// identities can be checked in exact rational arithmetic as well as in
// complex floating point.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bgkit/errors.hpp"
#include "bgkit/scalar.hpp"
#include "bgkit/measures.hpp"
#include "bgkit/quadrature.hpp"
#include "bgkit/specfun.hpp"

namespace bgkit {

using cplx = std::complex<double>;

template <class KT>
struct BasicSU11Rep {
    KT K;
    int trunc;

    BasicSU11Rep(KT k, int t) : K(k), trunc(t) {
        if (!(K > KT(0))) throw DomainError("SU11Rep: K must be > 0");
        if (trunc < 1) throw DomainError("SU11Rep: truncation must be >= 1");
    }
};

using SU11Rep = BasicSU11Rep<double>;

// Coefficients of z^0 .. z^T. `truncated` records that a raising operator
// dropped a nonzero coefficient past degree T somewhere along the way.
template <class S = cplx>
struct CoeffVector {
    std::vector<S> coeffs;
    bool truncated = false;

    CoeffVector() = default;
    explicit CoeffVector(int trunc) : coeffs(static_cast<std::size_t>(trunc) + 1, S(0)) {}

    int trunc() const { return static_cast<int>(coeffs.size()) - 1; }
    S& operator[](int n) { return coeffs[static_cast<std::size_t>(n)]; }
    const S& operator[](int n) const { return coeffs[static_cast<std::size_t>(n)]; }
};

template <class S>
CoeffVector<S> operator-(const CoeffVector<S>& a, const CoeffVector<S>& b) {
    CoeffVector<S> out(a.trunc());
    for (int n = 0; n <= a.trunc(); ++n) out[n] = a[n] - b[n];
    out.truncated = a.truncated || b.truncated;
    return out;
}

template <class S, class F>
CoeffVector<S> scaled(const CoeffVector<S>& a, const F& f) {
    CoeffVector<S> out(a.trunc());
    for (int n = 0; n <= a.trunc(); ++n) out[n] = a[n] * S(f);
    out.truncated = a.truncated;
    return out;
}

namespace detail {
template <class KT, class S>
void check_length(const BasicSU11Rep<KT>& rep, const CoeffVector<S>& v) {
    if (v.trunc() != rep.trunc) throw DomainError("CoeffVector length does not match truncation");
}
}  // namespace detail

template <class KT, class S>
CoeffVector<S> apply_K_plus(const BasicSU11Rep<KT>& rep, const CoeffVector<S>& v) {
    detail::check_length(rep, v);
    CoeffVector<S> out(rep.trunc);
    for (int n = 0; n < rep.trunc; ++n) out[n + 1] = v[n];
    out.truncated = v.truncated || v[rep.trunc] != S(0);
    return out;
}

template <class KT, class S>
CoeffVector<S> apply_K3(const BasicSU11Rep<KT>& rep, const CoeffVector<S>& v) {
    detail::check_length(rep, v);
    CoeffVector<S> out(rep.trunc);
    for (int n = 0; n <= rep.trunc; ++n) out[n] = S(KT(n) + rep.K) * v[n];
    out.truncated = v.truncated;
    return out;
}

template <class KT, class S>
CoeffVector<S> apply_K_minus(const BasicSU11Rep<KT>& rep, const CoeffVector<S>& v) {
    detail::check_length(rep, v);
    CoeffVector<S> out(rep.trunc);
    const KT twoK = KT(2) * rep.K;
    for (int n = 0; n < rep.trunc; ++n) out[n] = S(KT(n + 1) * (KT(n) + twoK)) * v[n + 1];
    out.truncated = v.truncated;
    return out;
}

// ([K_3, K_+] - K_+) v and ([K_-, K_+] - 2 K_3) v; both vanish identically
// below degree T-1.
template <class KT, class S>
CoeffVector<S> commutator_defect_K3_Kplus(const BasicSU11Rep<KT>& rep, const CoeffVector<S>& v) {
    const auto lhs = apply_K3(rep, apply_K_plus(rep, v)) - apply_K_plus(rep, apply_K3(rep, v));
    return lhs - apply_K_plus(rep, v);
}

template <class KT, class S>
CoeffVector<S> commutator_defect_Kminus_Kplus(const BasicSU11Rep<KT>& rep, const CoeffVector<S>& v) {
    const auto lhs = apply_K_minus(rep, apply_K_plus(rep, v)) - apply_K_plus(rep, apply_K_minus(rep, v));
    return lhs - scaled(apply_K3(rep, v), KT(2));
}

// ([K_3, K_-] + K_-) v
template <class KT, class S>
CoeffVector<S> commutator_defect_K3_Kminus(const BasicSU11Rep<KT>& rep, const CoeffVector<S>& v) {
    const auto lhs = apply_K3(rep, apply_K_minus(rep, v)) - apply_K_minus(rep, apply_K3(rep, v));
    const auto km = apply_K_minus(rep, v);
    CoeffVector<S> out = lhs;
    for (int n = 0; n <= rep.trunc; ++n) out[n] = lhs[n] + km[n];
    return out;
}

// max_{n <= max_degree} |v[n]|
template <class S>
double max_norm(const CoeffVector<S>& v, int max_degree) {
    double m = 0.0;
    for (int n = 0; n <= std::min(max_degree, v.trunc()); ++n) m = std::max(m, magnitude(v[n]));
    return m;
}

// Multiplying entry n by sqrt(n! (2K)_n) maps monomial coefficients to
// coefficients in the orthonormal basis u_n = z^n / sqrt(n! (2K)_n).
inline std::vector<double> orthonormal_scale(const SU11Rep& rep) {
    std::vector<double> s(static_cast<std::size_t>(rep.trunc) + 1);
    s[0] = 1.0;
    for (int n = 1; n <= rep.trunc; ++n) s[n] = s[n - 1] * std::sqrt(n * (n - 1 + 2.0 * rep.K));
    return s;
}

inline CoeffVector<> to_orthonormal(const SU11Rep& rep, const CoeffVector<>& v) {
    detail::check_length(rep, v);
    const auto s = orthonormal_scale(rep);
    CoeffVector<> out = v;
    for (int n = 0; n <= rep.trunc; ++n) out[n] *= s[n];
    return out;
}

inline CoeffVector<> from_orthonormal(const SU11Rep& rep, const CoeffVector<>& v) {
    detail::check_length(rep, v);
    const auto s = orthonormal_scale(rep);
    CoeffVector<> out = v;
    for (int n = 0; n <= rep.trunc; ++n) out[n] /= s[n];
    return out;
}

// The basis function u_n in monomial coefficients.
inline CoeffVector<> basis_vector(const SU11Rep& rep, int n) {
    if (n < 0 || n > rep.trunc) throw DomainError("basis_vector: degree out of range");
    CoeffVector<> e(rep.trunc);
    e[n] = 1.0;
    return from_orthonormal(rep, e);
}

// 0F1(2K; lambda z) truncated at degree T: coeffs[n] = lambda^n / (n! (2K)_n).
inline CoeffVector<> bg_state(const SU11Rep& rep, cplx lambda) {
    CoeffVector<> v(rep.trunc);
    v[0] = 1.0;
    for (int n = 0; n < rep.trunc; ++n) v[n + 1] = v[n] * lambda / ((n + 1.0) * (n + 2.0 * rep.K));
    return v;
}

// Evaluate sum_n coeffs[n] z^n (Horner).
template <class S>
cplx evaluate(const CoeffVector<S>& v, cplx z) {
    cplx acc = 0.0;
    for (int n = v.trunc(); n >= 0; --n) acc = acc * z + cplx(v[n]);
    return acc;
}

// max_{n <= T-2} |(K_- phi)[n] - lambda phi[n]| for phi = bg_state(rep, lambda).
inline double eigen_residual(const SU11Rep& rep, cplx lambda) {
    if (rep.trunc < 3) throw DomainError("eigen_residual: needs truncation >= 3");
    const auto phi = bg_state(rep, lambda);
    const auto lowered = apply_K_minus(rep, phi);
    double m = 0.0;
    for (int n = 0; n <= rep.trunc - 2; ++n) m = std::max(m, std::abs(lowered[n] - lambda * phi[n]));
    return m;
}

// <z|z'> = 0F1(2K; z* z')
inline cplx state_inner(const SU11Rep& rep, cplx z, cplx zp) {
    return hyp0f1(2.0 * rep.K, std::conj(z) * zp);
}

// Perelomov overlap (1 - xi* xi')^{-2K}, principal branch, on the unit disc.
inline cplx perelomov_inner(double K, cplx xi, cplx xip) {
    if (!(K > 0.0)) throw DomainError("perelomov_inner: K must be > 0");
    if (!(std::abs(xi) < 1.0) || !(std::abs(xip) < 1.0))
        throw DomainError("perelomov_inner: arguments must lie in the unit disc");
    return std::pow(1.0 - std::conj(xi) * xip, -2.0 * K);
}

// sum_n u_n(z') u_n*(z) as a function of x = z' zbar: 0F1(2K; x).
inline cplx completeness_kernel(const SU11Rep& rep, cplx x) { return hyp0f1(2.0 * rep.K, x); }

inline cplx completeness_kernel_truncated(const SU11Rep& rep, cplx x) {
    cplx term = 1.0, sum = 1.0;
    for (int n = 0; n < rep.trunc; ++n) {
        term *= x / ((n + 1.0) * (n + 2.0 * rep.K));
        sum += term;
    }
    return sum;
}

// |x|^{T+1} / ((T+1)! (2K)_{T+1}) e^{|x|}
inline double completeness_tail_bound(const SU11Rep& rep, double abs_x) {
    const int m = rep.trunc + 1;
    return std::exp(m * std::log(abs_x) - std::lgamma(m + 1.0) - std::lgamma(2.0 * rep.K + m) +
                    std::lgamma(2.0 * rep.K) + abs_x);
}

struct InnerProduct {
    cplx algebraic;
    cplx numeric;
    double numeric_err = 0.0;
};

// (A, B) = int dmu A*(z) B(z) by two routes: orthonormality of u_n, and 2D
// quadrature against the BG density (trapezoid in angle, which is exact for
// the trigonometric polynomial, and radial panels).
inline InnerProduct analytic_inner(const SU11Rep& rep, const CoeffVector<>& A, const CoeffVector<>& B,
                                   QuadratureSpec spec = {}) {
    detail::check_length(rep, A);
    detail::check_length(rep, B);
    InnerProduct ip;
    const auto s = orthonormal_scale(rep);
    double na = 0.0, nb = 0.0;
    for (int n = 0; n <= rep.trunc; ++n) {
        ip.algebraic += std::conj(A[n]) * B[n] * (s[n] * s[n]);
        na += std::norm(A[n]) * s[n] * s[n];
        nb += std::norm(B[n]) * s[n] * s[n];
    }

    const int M = 2 * rep.trunc + 2;
    const double K = rep.K;
    auto angular = [&](double r) {
        cplx acc = 0.0;
        for (int j = 0; j < M; ++j) {
            const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / M);
            acc += std::conj(evaluate(A, z)) * evaluate(B, z);
        }
        return acc * (2.0 * std::numbers::pi / M) * bg_density(K, r) * r;
    };
    spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::sqrt(na * nb));
    const double lead = 1.0 + std::min(0.0, 4.0 * K - 2.0);
    const auto re = integrate_radial([&](double r) { return angular(r).real(); }, spec, lead);
    const auto im = integrate_radial([&](double r) { return angular(r).imag(); }, spec, lead);
    ip.numeric = cplx(re.value, im.value);
    ip.numeric_err = std::hypot(re.err_bound, im.err_bound);
    return ip;
}

}  // namespace bgkit
