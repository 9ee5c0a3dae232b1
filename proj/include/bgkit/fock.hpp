#pragma once
//
// Schwinger-boson realization of u(N,1) for integer K on the truncated
// Fock sector |n_1, ..., n_N, K-1+|n|> with |n| <= T:
//   E_{ab} = a_a^+ a_b,  E_{a,N+1} = a_a^+ a_{N+1}^+,
//   E_{N+1,b} = a_b a_{N+1},  E_{N+1,N+1} = a_{N+1}^+ a_{N+1} + 1.
//

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "bgkit/errors.hpp"
#include "bgkit/specfun.hpp"
#include "bgkit/un1.hpp"

namespace bgkit {

class FockBasis {
public:
    FockBasis(int N, int K, int T) : N_(N), K_(K), T_(T) {
        if (N < 1) throw DomainError("FockBasis: N must be >= 1");
        if (K < 1) throw DomainError("FockBasis: K must be a positive integer");
        if (T < 1) throw DomainError("FockBasis: truncation must be >= 1");
        states_ = monomials(N, T);
        for (std::size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = static_cast<int>(i);
    }

    int N() const { return N_; }
    int K() const { return K_; }
    int trunc() const { return T_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const MultiIndex& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
    // occupation of mode N+1
    int last_occupation(int i) const { return K_ - 1 + state(i).degree(); }

    // -1 when the state lies outside the truncated sector
    int index_of(const MultiIndex& m) const {
        for (int x : m.n)
            if (x < 0) return -1;
        auto it = index_.find(m);
        return it == index_.end() ? -1 : it->second;
    }

private:
    int N_, K_, T_;
    std::vector<MultiIndex> states_;
    std::map<MultiIndex, int> index_;
};

struct GeneratorMatrix {
    int alpha = 0, beta = 0;
    Eigen::SparseMatrix<double> m;
    bool truncated = false;  // a raising matrix element left the sector
};

inline GeneratorMatrix build_generator(const FockBasis& basis, int alpha, int beta) {
    const int N = basis.N();
    if (alpha < 1 || alpha > N + 1 || beta < 1 || beta > N + 1)
        throw DomainError("build_generator: indices must lie in 1..N+1");
    GeneratorMatrix g{alpha, beta, Eigen::SparseMatrix<double>(basis.dim(), basis.dim()), false};
    std::vector<Eigen::Triplet<double>> trip;
    const int a = alpha - 1, b = beta - 1;
    for (int j = 0; j < basis.dim(); ++j) {
        const MultiIndex& n = basis.state(j);
        const double m = basis.last_occupation(j);
        MultiIndex target = n;
        double amp = 0.0;
        if (alpha <= N && beta <= N) {
            if (n[b] == 0) continue;
            amp = std::sqrt(double(n[b]));
            target = n.shifted(b, -1);
            amp *= std::sqrt(target[a] + 1.0);
            target = target.shifted(a, 1);
        } else if (alpha <= N) {
            amp = std::sqrt(n[a] + 1.0) * std::sqrt(m + 1.0);
            target = n.shifted(a, 1);
        } else if (beta <= N) {
            if (n[b] == 0) continue;
            amp = std::sqrt(double(n[b])) * std::sqrt(m);
            target = n.shifted(b, -1);
        } else {
            amp = m + 1.0;
        }
        const int i = basis.index_of(target);
        if (i < 0) {
            g.truncated = true;
            continue;
        }
        trip.emplace_back(i, j, amp);
    }
    g.m.setFromTriplets(trip.begin(), trip.end());
    return g;
}

// All (N+1)^2 generators, indexed [alpha-1][beta-1].
inline std::vector<std::vector<GeneratorMatrix>> build_generators(const FockBasis& basis) {
    const int n = basis.N() + 1;
    std::vector<std::vector<GeneratorMatrix>> out(static_cast<std::size_t>(n));
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) out[a - 1].push_back(build_generator(basis, a, b));
    return out;
}

// sqrt(n_1! ... n_N! (K)_{|n|}): Fock coefficient = analytic coefficient * this.
inline double fock_basis_scale(const MultiIndex& n, double K) {
    double s = pochhammer(K, static_cast<unsigned>(n.degree()));
    for (int x : n.n) s *= std::tgamma(x + 1.0);
    return std::sqrt(s);
}

// |z> = sum_n sqrt(Gamma(K) / (n! Gamma(K+|n|))) z^n |n, K-1+|n|>
inline Eigen::VectorXcd fock_bg_state(const FockBasis& basis, const std::vector<std::complex<double>>& z) {
    if (static_cast<int>(z.size()) != basis.N()) throw DomainError("fock_bg_state: z must have length N");
    Eigen::VectorXcd v(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) {
        const MultiIndex& n = basis.state(i);
        std::complex<double> c = 1.0;
        for (int a = 0; a < basis.N(); ++a)
            if (n[a]) c *= std::pow(z[a], n[a]);
        v[i] = c / fock_basis_scale(n, basis.K());
    }
    return v;
}

// max over alpha and interior states of |((E_{N+1,alpha} - z_alpha)|z>)_n|.
inline double fock_eigen_residual(const FockBasis& basis, const std::vector<std::complex<double>>& z) {
    if (basis.trunc() < 3) throw DomainError("fock_eigen_residual: needs truncation >= 3");
    const auto v = fock_bg_state(basis, z);
    double r = 0.0;
    for (int a = 1; a <= basis.N(); ++a) {
        const auto E = build_generator(basis, basis.N() + 1, a);
        const Eigen::VectorXcd d = E.m.cast<std::complex<double>>() * v - z[a - 1] * v;
        for (int i = 0; i < basis.dim(); ++i)
            if (basis.state(i).degree() <= basis.trunc() - 2) r = std::max(r, std::abs(d[i]));
    }
    return r;
}

struct OverlapCheck {
    std::complex<double> truncated;
    std::complex<double> closed;
    double rel_diff() const { return std::abs(truncated - closed) / std::abs(closed); }
};

// <z|z'> over the truncated sector against 0F1(K; z^+ z').
inline OverlapCheck fock_overlap(const FockBasis& basis, const std::vector<std::complex<double>>& z,
                                 const std::vector<std::complex<double>>& zp) {
    const auto a = fock_bg_state(basis, z);
    const auto b = fock_bg_state(basis, zp);
    std::complex<double> dot = 0.0;
    for (int i = 0; i < basis.N(); ++i) dot += std::conj(z[i]) * zp[i];
    return {a.dot(b), hyp0f1(double(basis.K()), dot)};  // Eigen's dot conjugates the left factor
}

// Largest entry of [E_ab, E_cd] - eta_bc E_ad + eta_da E_cb over columns with |n| <= T-2.
inline double fock_structure_check(const FockBasis& basis, const std::vector<std::vector<GeneratorMatrix>>& E,
                                   int a, int b, int c, int d) {
    const Metric eta(basis.N());
    auto G = [&](int x, int y) -> const Eigen::SparseMatrix<double>& { return E[x - 1][y - 1].m; };
    Eigen::SparseMatrix<double> D = G(a, b) * G(c, d) - G(c, d) * G(a, b);
    if (eta(b, c) != 0) D -= double(eta(b, c)) * G(a, d);
    if (eta(d, a) != 0) D += double(eta(d, a)) * G(c, b);
    double r = 0.0;
    for (int j = 0; j < D.outerSize(); ++j) {
        if (basis.state(j).degree() > basis.trunc() - 2) continue;
        for (Eigen::SparseMatrix<double>::InnerIterator it(D, j); it; ++it) r = std::max(r, std::abs(it.value()));
    }
    return r;
}

}  // namespace bgkit
