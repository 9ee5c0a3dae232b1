#pragma once
//
// Truncated analytic representation of u(N,1) on polynomials in z_1..z_N of
// total degree <= T:
//   E_{ab}       = z_a d_b                      (a, b <= N)
//   E_{a,N+1}    = z_a
//   E_{N+1,b}    = sum_c z_c d_c d_b + K d_b
//   E_{N+1,N+1}  = sum_c z_c d_c + K
// Indices are 1-based to match the usual labelling. Like su11.hpp this is
// templated on the coefficient type so identities can be checked exactly.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "bgkit/errors.hpp"
#include "bgkit/scalar.hpp"
#include "bgkit/specfun.hpp"

namespace bgkit {

template <class KT>
struct BasicUN1Rep {
    int N;
    KT K;
    int trunc;

    BasicUN1Rep(int n, KT k, int t) : N(n), K(k), trunc(t) {
        if (N < 1) throw DomainError("UN1Rep: N must be >= 1");
        if (!(K > KT(0))) throw DomainError("UN1Rep: K must be > 0");
        if (trunc < 1) throw DomainError("UN1Rep: truncation must be >= 1");
    }
};

using UN1Rep = BasicUN1Rep<double>;

// Exponent vector of a monomial z_1^{n_1} ... z_N^{n_N}. Ordered by total
// degree, then lexicographically, so map iteration is reproducible.
struct MultiIndex {
    std::vector<int> n;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> v) : n(std::move(v)) {}

    int size() const { return static_cast<int>(n.size()); }
    int degree() const { return std::accumulate(n.begin(), n.end(), 0); }
    int operator[](int a) const { return n[static_cast<std::size_t>(a)]; }

    MultiIndex shifted(int a, int delta) const {
        MultiIndex m = *this;
        m.n[static_cast<std::size_t>(a)] += delta;
        return m;
    }

    std::strong_ordering operator<=>(const MultiIndex& o) const {
        if (auto c = degree() <=> o.degree(); c != 0) return c;
        return n <=> o.n;
    }
    bool operator==(const MultiIndex& o) const = default;

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
        return s;
    }
};

// All exponent vectors of length N with total degree <= max_degree, in MultiIndex order.
inline std::vector<MultiIndex> monomials(int N, int max_degree) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(N), 0);
    for (int d = 0; d <= max_degree; ++d) {
        // lexicographic enumeration of compositions of d into N parts
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == N - 1) {
                cur[pos] = left;
                out.emplace_back(cur);
                return;
            }
            for (int k = 0; k <= left; ++k) {
                cur[pos] = k;
                self(self, pos + 1, left - k);
            }
        };
        rec(rec, 0, d);
    }
    return out;
}

// Sparse polynomial; absent keys are zero.
template <class S = std::complex<double>>
struct MultiCoeff {
    std::map<MultiIndex, S> terms;
    bool truncated = false;

    S get(const MultiIndex& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? S(0) : it->second;
    }
    void add(const MultiIndex& m, const S& v) {
        if (v == S(0)) return;
        terms[m] += v;
    }
};

template <class S>
MultiCoeff<S> operator+(const MultiCoeff<S>& a, const MultiCoeff<S>& b) {
    MultiCoeff<S> out = a;
    for (const auto& [m, v] : b.terms) out.terms[m] += v;
    out.truncated = a.truncated || b.truncated;
    return out;
}

template <class S, class F>
MultiCoeff<S> scaled(const MultiCoeff<S>& a, const F& f) {
    MultiCoeff<S> out;
    for (const auto& [m, v] : a.terms) out.terms[m] = v * S(f);
    out.truncated = a.truncated;
    return out;
}

template <class S>
MultiCoeff<S> operator-(const MultiCoeff<S>& a, const MultiCoeff<S>& b) {
    return a + scaled(b, -1);
}

// eta = diag(1, ..., 1, -1) over indices 1..N+1.
struct Metric {
    std::vector<int> eta;

    explicit Metric(int N) : eta(static_cast<std::size_t>(N) + 1, 1) { eta.back() = -1; }
    int operator()(int a, int b) const { return a == b ? eta[static_cast<std::size_t>(a) - 1] : 0; }
};

template <class KT, class S>
MultiCoeff<S> apply_E(const BasicUN1Rep<KT>& rep, int alpha, int beta, const MultiCoeff<S>& v) {
    const int N = rep.N;
    if (alpha < 1 || alpha > N + 1 || beta < 1 || beta > N + 1)
        throw DomainError("apply_E: indices must lie in 1..N+1");
    MultiCoeff<S> out;
    out.truncated = v.truncated;
    const int a = alpha - 1, b = beta - 1;
    for (const auto& [m, c] : v.terms) {
        if (m.size() != N) throw DomainError("apply_E: multi-index length does not match N");
        const int deg = m.degree();
        if (alpha <= N && beta <= N) {
            if (m[b] == 0) continue;
            out.add(m.shifted(b, -1).shifted(a, 1), S(KT(m[b])) * c);
        } else if (alpha <= N) {  // beta = N+1: multiply by z_alpha
            if (deg >= rep.trunc) {
                if (c != S(0)) out.truncated = true;
                continue;
            }
            out.add(m.shifted(a, 1), c);
        } else if (beta <= N) {  // alpha = N+1: lowering
            if (m[b] == 0) continue;
            out.add(m.shifted(b, -1), S(KT(m[b]) * (KT(deg - 1) + rep.K)) * c);
        } else {
            out.add(m, S(KT(deg) + rep.K) * c);
        }
    }
    return out;
}

template <class S>
double max_norm(const MultiCoeff<S>& v, int max_degree) {
    double r = 0.0;
    for (const auto& [m, c] : v.terms)
        if (m.degree() <= max_degree) r = std::max(r, magnitude(c));
    return r;
}

// ([E_ab, E_cd] - eta_bc E_ad + eta_da E_cb) v, restricted to degree <= T-2.
template <class KT, class S>
MultiCoeff<S> structure_defect(const BasicUN1Rep<KT>& rep, int a, int b, int c, int d, const MultiCoeff<S>& v) {
    const Metric eta(rep.N);
    auto E = [&](int x, int y, const MultiCoeff<S>& w) { return apply_E(rep, x, y, w); };
    MultiCoeff<S> out = E(a, b, E(c, d, v)) - E(c, d, E(a, b, v));
    if (eta(b, c) != 0) out = out - scaled(E(a, d, v), KT(eta(b, c)));
    if (eta(d, a) != 0) out = out + scaled(E(c, b, v), KT(eta(d, a)));
    MultiCoeff<S> kept;
    for (const auto& [m, x] : out.terms)
        if (m.degree() <= rep.trunc - 2) kept.terms[m] = x;
    return kept;
}

template <class KT, class S>
double structure_check(const BasicUN1Rep<KT>& rep, int a, int b, int c, int d, const MultiCoeff<S>& v) {
    return max_norm(structure_defect(rep, a, b, c, d, v), rep.trunc - 2);
}

// (-sum_a E_aa + E_{N+1,N+1} - K) v
template <class KT, class S>
MultiCoeff<S> subsidiary_defect(const BasicUN1Rep<KT>& rep, const MultiCoeff<S>& v) {
    MultiCoeff<S> out = apply_E(rep, rep.N + 1, rep.N + 1, v) - scaled(v, rep.K);
    for (int a = 1; a <= rep.N; ++a) out = out - apply_E(rep, a, a, v);
    return out;
}

template <class KT, class S>
double subsidiary_residual(const BasicUN1Rep<KT>& rep, const MultiCoeff<S>& v) {
    return max_norm(subsidiary_defect(rep, v), rep.trunc);
}

// lambda^n / (n_1! ... n_N! (K)_{|n|}) for |n| <= T; the monomials are
// generated recursively by dividing out the last nonzero exponent.
inline MultiCoeff<> extended_bg_state(const UN1Rep& rep, const std::vector<std::complex<double>>& lambda) {
    if (static_cast<int>(lambda.size()) != rep.N) throw DomainError("extended_bg_state: lambda must have length N");
    MultiCoeff<> out;
    for (const auto& m : monomials(rep.N, rep.trunc)) {
        if (m.degree() == 0) {
            out.terms[m] = 1.0;
            continue;
        }
        int a = rep.N - 1;
        while (m[a] == 0) --a;
        const auto prev = out.get(m.shifted(a, -1));
        const auto c = prev * lambda[a] / (double(m[a]) * (m.degree() - 1 + rep.K));
        if (c != 0.0) out.terms[m] = c;
    }
    return out;
}

template <class S>
std::complex<double> evaluate(const MultiCoeff<S>& v, const std::vector<std::complex<double>>& z) {
    std::complex<double> acc = 0.0;
    for (const auto& [m, c] : v.terms) {
        std::complex<double> t = c;
        for (int a = 0; a < m.size(); ++a)
            if (m[a]) t *= std::pow(z[a], m[a]);
        acc += t;
    }
    return acc;
}

// max over alpha and |n| <= T-2 of |(E_{N+1,alpha} phi)[n] - lambda_alpha phi[n]|.
inline double extended_eigen_residual(const UN1Rep& rep, const std::vector<std::complex<double>>& lambda) {
    if (rep.trunc < 3) throw DomainError("extended_eigen_residual: needs truncation >= 3");
    const auto phi = extended_bg_state(rep, lambda);
    double r = 0.0;
    for (int a = 1; a <= rep.N; ++a) {
        const auto d = apply_E(rep, rep.N + 1, a, phi) - scaled(phi, lambda[a - 1]);
        r = std::max(r, max_norm(d, rep.trunc - 2));
    }
    return r;
}

struct KernelPair {
    std::complex<double> truncated;
    std::complex<double> closed;
    double rel_diff() const { return std::abs(truncated - closed) / std::abs(closed); }
};

// sum_{|n| <= T} u_n(z') u_n*(z) against 0F1(K; z'.zbar); zbar is passed already conjugated.
inline KernelPair completeness_kernel_N(const UN1Rep& rep, const std::vector<std::complex<double>>& zp,
                                        const std::vector<std::complex<double>>& zbar) {
    if (static_cast<int>(zp.size()) != rep.N || static_cast<int>(zbar.size()) != rep.N)
        throw DomainError("completeness_kernel_N: vectors must have length N");
    std::vector<std::complex<double>> w(zp.size());
    std::complex<double> dot = 0.0;
    for (int a = 0; a < rep.N; ++a) {
        w[a] = zp[a] * zbar[a];
        dot += w[a];
    }
    // the coefficients of extended_bg_state(w) are exactly the kernel terms
    const auto phi = extended_bg_state(rep, w);
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : phi.terms) sum += c;
    return {sum, hyp0f1(rep.K, dot)};
}

}  // namespace bgkit
