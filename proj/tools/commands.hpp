#pragma once
// Verification campaigns behind the bgkit command line. Each command is a
// pure function of its RunConfig and returns a Report plus an exit code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bgkit/bgkit.hpp"

namespace bgkit::cli {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;  // also: compare verdict DIFFERENT
constexpr int kExitInconclusive = 3;
constexpr int kExitUnexpectedVerdict = 4;

struct RunConfig {
    std::string command;
    std::optional<double> K;
    std::optional<int> N;
    std::optional<int> trunc;
    std::optional<double> tol;
    std::uint64_t seed = 42;
    int n_max = 8;
    std::string r_grid;
    std::string rho_grid;
    bool perelomov = false;
    bool fit = false;
    std::string expect;
    std::optional<double> alpha, beta, s;
    std::string format = "csv";
};

struct CommandResult {
    Report report;
    int exit_code = kExitOk;
};

namespace detail {

// Uniform doubles in [0, 1) from the top 53 bits, so seeded streams do not
// depend on the standard library's distribution implementation.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}
    double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    std::complex<double> unit_square() {
        const double re = (*this)();
        return {re, (*this)()};
    }

private:
    std::mt19937_64 rng_;
};

inline std::string cplx_text(std::complex<double> z) {
    return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

inline void echo_common(Report& rep, const RunConfig& cfg, double tol) {
    rep.set("command", cfg.command);
    rep.set("tol", tol);
    rep.set("seed", std::to_string(cfg.seed));
    rep.set("format", cfg.format);
}

inline double tolerance(const RunConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

}  // namespace detail

// Resolution-of-unity moments; BG when N is unset, U(N,1) otherwise.
inline CommandResult cmd_moments(const RunConfig& cfg) {
    if (!cfg.K) throw DomainError("moments: --K is required");
    if (cfg.n_max < 0) throw DomainError("moments: --n-max must be >= 0");
    const double K = *cfg.K;
    const bool multi = cfg.N.has_value();
    const double tol = detail::tolerance(cfg, multi ? 1e-8 : 1e-10);
    CommandResult res;
    Report& rep = res.report;
    detail::echo_common(rep, cfg, tol);
    rep.set("K", K);
    rep.set("N", multi ? *cfg.N : 1);
    rep.set("measure", multi ? "un1" : "bg");
    rep.set("n_max", cfg.n_max);
    rep.columns = {"n", "computed", "err_bound", "expected", "rel_err"};

    double worst = 0.0;
    auto record = [&](const std::string& label, const MomentResult& m) {
        const double e = m.rel_err();
        worst = std::max(worst, std::isnan(e) ? INFINITY : e);
        rep.add_row({label, m.value, m.err_bound, m.expected, e});
    };
    if (!multi) {
        for (int n = 0; n <= cfg.n_max; ++n) record(std::to_string(n), bg_moment(K, static_cast<unsigned>(n)));
    } else {
        const int N = *cfg.N;
        if (N < 1) throw DomainError("moments: --N must be >= 1");
        for (const auto& m : monomials(N, cfg.n_max)) {
            std::vector<unsigned> n(m.n.begin(), m.n.end());
            record(m.str(), un1_moment(K, N, n));
        }
    }
    rep.max_err = worst;
    rep.verdict = worst <= tol ? "PASS" : "FAIL";
    res.exit_code = worst <= tol ? kExitOk : kExitCheckFailed;
    return res;
}

inline CommandResult cmd_compare(const RunConfig& cfg) {
    if (!cfg.K) throw DomainError("compare: --K is required");
    const double K = *cfg.K;
    CompareOptions opt;
    opt.fit = cfg.fit;
    CommandResult res;
    Report& rep = res.report;
    detail::echo_common(rep, cfg, opt.same_tol);
    rep.set("K", K);
    rep.set("same_tol", opt.same_tol);
    rep.set("different_tol", opt.different_tol);
    rep.set("normalize", "1");
    rep.set("fit", cfg.fit ? "1" : "0");

    ComparisonReport cmp;
    if (cfg.perelomov) {
        const std::string spec = cfg.rho_grid.empty() ? "0:0.95:0.01" : cfg.rho_grid;
        rep.set("measure", "perelomov");
        rep.set("rho", spec);
        cmp = compare_perelomov(K, parse_grid(spec), opt);
        rep.columns = {"rho", "perelomov", "omega", "ratio"};
    } else {
        const std::string spec = cfg.r_grid.empty() ? (cfg.fit ? "0.01:0.1:0.001" : "0.01:2:0.01") : cfg.r_grid;
        rep.set("measure", "bg");
        rep.set("r", spec);
        cmp = compare_measures(K, parse_grid(spec), opt);
        rep.columns = {"r", "bg", "omega", "ratio"};
    }
    for (std::size_t i = 0; i < cmp.grid.size(); ++i) rep.add_row({cmp.grid[i], cmp.a[i], cmp.b[i], cmp.ratio[i]});

    if (cmp.fit_a && cmp.fit_b) {
        rep.set("fit_" + cmp.label_a + "_c2", cmp.fit_a->normalized_c2());
        rep.set("fit_" + cmp.label_b + "_c2", cmp.fit_b->normalized_c2());
        rep.set("fit_residual", std::max(cmp.fit_a->residual, cmp.fit_b->residual));
        if (!cfg.perelomov && K > 0.5 && K != 1.0) {
            rep.set("expansion_bg_c2", bg_r2_coefficient(K));
            rep.set("expansion_omega_c2", omega_r2_coefficient(K));
        }
    }
    rep.max_err = cmp.max_abs_deviation;
    rep.verdict = to_string(cmp.verdict);
    if (!cfg.expect.empty()) {
        rep.set("expect", cfg.expect);
        res.exit_code = rep.verdict == cfg.expect ? kExitOk : kExitUnexpectedVerdict;
    } else {
        res.exit_code = cmp.verdict == Verdict::Same        ? kExitOk
                        : cmp.verdict == Verdict::Different ? kExitCheckFailed
                                                            : kExitInconclusive;
    }
    return res;
}

// su(1,1) commutators, u(N,1) structure constants over all index tuples,
// and the subsidiary condition, on seeded random vectors.
inline CommandResult cmd_algebra(const RunConfig& cfg) {
    const int N = cfg.N.value_or(2);
    const double K = cfg.K.value_or(1.5);
    const int T = cfg.trunc.value_or(10);
    const double tol = detail::tolerance(cfg, 1e-12);
    constexpr int kVectors = 5;
    CommandResult res;
    Report& rep = res.report;
    detail::echo_common(rep, cfg, tol);
    rep.set("K", K);
    rep.set("N", N);
    rep.set("trunc", T);
    rep.set("vectors", kVectors);
    rep.columns = {"check", "indices", "defect"};

    detail::Uniform u(cfg.seed);
    std::vector<MultiCoeff<>> vs;
    for (int k = 0; k < kVectors; ++k) {
        MultiCoeff<> v;
        for (const auto& m : monomials(N, T)) v.terms[m] = u.unit_square();
        vs.push_back(std::move(v));
    }
    std::vector<CoeffVector<>> ws;
    for (int k = 0; k < kVectors; ++k) {
        CoeffVector<> w(T);
        for (int n = 0; n <= T; ++n) w[n] = u.unit_square();
        ws.push_back(std::move(w));
    }

    double worst = 0.0;
    auto record = [&](const std::string& check, const std::string& idx, double d) {
        worst = std::max(worst, d);
        rep.add_row({check, idx, d});
    };

    // su(1,1) with 2 K_bg = K, matching the N = 1 reduction
    const SU11Rep su(K / 2.0, T);
    double d1 = 0.0, d2 = 0.0;
    for (const auto& w : ws) {
        d1 = std::max(d1, max_norm(commutator_defect_K3_Kplus(su, w), T - 2));
        d2 = std::max(d2, max_norm(commutator_defect_Kminus_Kplus(su, w), T - 2));
    }
    record("su11", "[K3,K+]-K+", d1);
    record("su11", "[K-,K+]-2K3", d2);

    const UN1Rep rep_un(N, K, T);
    for (int a = 1; a <= N + 1; ++a)
        for (int b = 1; b <= N + 1; ++b)
            for (int c = 1; c <= N + 1; ++c)
                for (int d = 1; d <= N + 1; ++d) {
                    double m = 0.0;
                    for (const auto& v : vs) m = std::max(m, structure_check(rep_un, a, b, c, d, v));
                    record("structure", std::to_string(a) + std::to_string(b) + std::to_string(c) +
                                            std::to_string(d),
                           m);
                }
    double sub = 0.0;
    for (const auto& v : vs) sub = std::max(sub, subsidiary_residual(rep_un, v));
    record("subsidiary", "-", sub);

    rep.max_err = worst;
    rep.verdict = worst <= tol ? "PASS" : "FAIL";
    res.exit_code = worst <= tol ? kExitOk : kExitCheckFailed;
    return res;
}

// Eigen residuals of the BG state (su(1,1) at K), the extended state
// (u(N,1) at K), and the Fock state when K is a positive integer.
inline CommandResult cmd_eigen(const RunConfig& cfg) {
    const int N = cfg.N.value_or(2);
    const double K = cfg.K.value_or(0.75);
    const int T = cfg.trunc.value_or(40);
    const double tol = detail::tolerance(cfg, 1e-12);
    constexpr int kSamples = 8;
    CommandResult res;
    Report& rep = res.report;
    detail::echo_common(rep, cfg, tol);
    rep.set("K", K);
    rep.set("N", N);
    rep.set("trunc", T);
    rep.set("samples", kSamples);
    rep.columns = {"family", "lambda", "residual"};

    detail::Uniform u(cfg.seed);
    auto lam = [&](double radius) {
        // |lambda| <= radius, uniform in the disc
        const double rad = radius * std::sqrt(u());
        return std::polar(rad, 2.0 * std::numbers::pi * u());
    };
    double worst = 0.0;
    auto record = [&](const std::string& fam, const std::string& l, double r) {
        worst = std::max(worst, r);
        rep.add_row({fam, l, r});
    };

    const SU11Rep su(K, T);
    for (int k = 0; k < kSamples; ++k) {
        const auto l = lam(4.0);
        record("su11", detail::cplx_text(l), eigen_residual(su, l));
    }
    const UN1Rep un(N, K, std::min(T, N >= 3 ? 20 : T));
    for (int k = 0; k < kSamples; ++k) {
        std::vector<std::complex<double>> l(static_cast<std::size_t>(N));
        std::string text;
        for (int a = 0; a < N; ++a) {
            l[a] = lam(4.0 / std::sqrt(double(N)));
            text += (a ? ";" : "") + detail::cplx_text(l[a]);
        }
        record("un1", text, extended_eigen_residual(un, l));
    }
    if (K == std::round(K) && K >= 1.0 && N <= 3) {
        const FockBasis fb(N, static_cast<int>(K), std::min(T, 25));
        rep.set("fock_trunc", fb.trunc());
        for (int k = 0; k < kSamples; ++k) {
            std::vector<std::complex<double>> z(static_cast<std::size_t>(N));
            std::string text;
            for (int a = 0; a < N; ++a) {
                z[a] = lam(1.5 / std::sqrt(double(N)));
                text += (a ? ";" : "") + detail::cplx_text(z[a]);
            }
            record("fock", text, fock_eigen_residual(fb, z));
        }
    }
    rep.max_err = worst;
    rep.verdict = worst <= tol ? "PASS" : "FAIL";
    res.exit_code = worst <= tol ? kExitOk : kExitCheckFailed;
    return res;
}

// Truncated completeness kernels against 0F1 closed forms.
inline CommandResult cmd_kernel(const RunConfig& cfg) {
    const int N = cfg.N.value_or(2);
    const double K = cfg.K.value_or(0.75);
    const int T = cfg.trunc.value_or(40);
    const double tol = detail::tolerance(cfg, 1e-12);
    constexpr int kSamples = 8;
    CommandResult res;
    Report& rep = res.report;
    detail::echo_common(rep, cfg, tol);
    rep.set("K", K);
    rep.set("N", N);
    rep.set("trunc", T);
    rep.set("samples", kSamples);
    rep.columns = {"family", "x", "truncated_re", "truncated_im", "closed_re", "closed_im", "rel_diff", "tail_bound"};

    detail::Uniform u(cfg.seed);
    double worst = 0.0;
    auto record = [&](const std::string& fam, std::complex<double> x, std::complex<double> tr,
                      std::complex<double> cl, double bound) {
        const double d = std::abs(tr - cl) / std::abs(cl);
        worst = std::max(worst, d);
        rep.add_row({fam, detail::cplx_text(x), tr.real(), tr.imag(), cl.real(), cl.imag(), d, bound});
    };
    auto point = [&](double radius) { return std::polar(radius * std::sqrt(u()), 2.0 * std::numbers::pi * u()); };

    const SU11Rep su(K, T);
    for (int k = 0; k < kSamples; ++k) {
        const auto x = point(2.0);
        record("su11", x, completeness_kernel_truncated(su, x), completeness_kernel(su, x),
               completeness_tail_bound(su, std::abs(x)));
    }
    const UN1Rep un(N, K, T);
    for (int k = 0; k < kSamples; ++k) {
        std::vector<std::complex<double>> zp(static_cast<std::size_t>(N)), zb(static_cast<std::size_t>(N));
        std::complex<double> dot = 0.0;
        for (int a = 0; a < N; ++a) {
            zp[a] = point(1.5 / std::sqrt(double(N)));
            zb[a] = point(1.0 / std::sqrt(double(N)));
            dot += zp[a] * zb[a];
        }
        const auto kp = completeness_kernel_N(un, zp, zb);
        record("un1", dot, kp.truncated, kp.closed, std::nan(""));
    }
    if (K == std::round(K) && K >= 1.0 && N <= 2) {
        const FockBasis fb(N, static_cast<int>(K), T);
        for (int k = 0; k < kSamples; ++k) {
            std::vector<std::complex<double>> z(static_cast<std::size_t>(N)), zp(static_cast<std::size_t>(N));
            std::complex<double> dot = 0.0;
            for (int a = 0; a < N; ++a) {
                z[a] = point(1.5 / std::sqrt(double(N)));
                zp[a] = point(1.5 / std::sqrt(double(N)));
                dot += std::conj(z[a]) * zp[a];
            }
            const auto ov = fock_overlap(fb, z, zp);
            record("fock", dot, ov.truncated, ov.closed, std::nan(""));
        }
    }
    rep.max_err = worst;
    rep.verdict = worst <= tol ? "PASS" : "FAIL";
    res.exit_code = worst <= tol ? kExitOk : kExitCheckFailed;
    return res;
}

// Hyperbolic closed forms at K = 1/4 and 3/4 against the general routes,
// with the normalized BG / symplectic ratio alongside.
inline CommandResult cmd_appendix(const RunConfig& cfg) {
    const double tol = detail::tolerance(cfg, 1e-12);
    const std::string spec = cfg.r_grid.empty() ? "0.01:5:0.01" : cfg.r_grid;
    const auto grid = parse_grid(spec);
    if (!(grid.front() > 0.0)) throw DomainError("appendix: grid must lie in (0, r_max]");
    CommandResult res;
    Report& rep = res.report;
    detail::echo_common(rep, cfg, tol);
    rep.set("r", spec);
    rep.columns = {"K", "r", "bg", "bg_closed", "omega", "omega_closed", "ratio", "max_rel_err"};

    double worst = 0.0, min_disagreement = INFINITY;
    for (double K : {0.25, 0.75}) {
        const auto cmp = compare_measures(K, grid);
        min_disagreement = std::min(min_disagreement, cmp.max_abs_deviation);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = grid[i];
            const double bg = bg_density(K, r), om = bg_symplectic_closed(K, r);
            const double bgc = K == 0.25 ? appendix::bg_density_quarter(r) : appendix::bg_density_three_quarters(r);
            const double omc = K == 0.25 ? appendix::symplectic_quarter(r) : appendix::symplectic_three_quarters(r);
            const double e = std::max(std::abs(bg - bgc) / bgc, std::abs(om - omc) / omc);
            worst = std::max(worst, e);
            rep.add_row({K, r, bg, bgc, om, omc, cmp.ratio[i], e});
        }
    }
    rep.set("min_shape_deviation", min_disagreement);
    rep.max_err = worst;
    const bool ok = worst <= tol && min_disagreement > 1e-2;
    rep.verdict = ok ? "PASS" : "FAIL";
    res.exit_code = ok ? kExitOk : kExitCheckFailed;
    return res;
}

// Bessel-K Mellin integral on a 3x3x3 lattice, or at a single point.
inline CommandResult cmd_iwanami(const RunConfig& cfg) {
    const double tol = detail::tolerance(cfg, 1e-10);
    CommandResult res;
    Report& rep = res.report;
    detail::echo_common(rep, cfg, tol);
    rep.columns = {"alpha", "beta", "s", "lhs", "err_bound", "rhs", "rel_err"};

    std::vector<double> as{0.25, 0.6, 1.0}, bs{0.1, 0.35, 0.75}, ss{0.5, 1.0, 2.0};
    if (cfg.alpha || cfg.beta || cfg.s) {
        if (!cfg.alpha || !cfg.beta || !cfg.s) throw DomainError("iwanami: give all of --alpha --beta --s");
        as = {*cfg.alpha};
        bs = {*cfg.beta};
        ss = {*cfg.s};
    }
    rep.set("points", static_cast<int>(as.size() * bs.size() * ss.size()));
    double worst = 0.0;
    for (double a : as)
        for (double b : bs)
            for (double s : ss) {
                const auto c = iwanami_check(a, b, s);
                worst = std::max(worst, c.rel_err);
                rep.add_row({a, b, s, c.lhs, c.err_bound, c.rhs, c.rel_err});
            }
    rep.max_err = worst;
    rep.verdict = worst <= tol ? "PASS" : "FAIL";
    res.exit_code = worst <= tol ? kExitOk : kExitCheckFailed;
    return res;
}

inline CommandResult run(const RunConfig& cfg) {
    if (cfg.command == "moments") return cmd_moments(cfg);
    if (cfg.command == "compare") return cmd_compare(cfg);
    if (cfg.command == "algebra") return cmd_algebra(cfg);
    if (cfg.command == "eigen") return cmd_eigen(cfg);
    if (cfg.command == "kernel") return cmd_kernel(cfg);
    if (cfg.command == "appendix") return cmd_appendix(cfg);
    if (cfg.command == "iwanami") return cmd_iwanami(cfg);
    throw DomainError("unknown command '" + cfg.command + "'");
}

inline std::string render(const CommandResult& res, const std::string& format) {
    if (format == "json") return to_json(res.report);
    if (format == "csv") return to_csv(res.report);
    throw DomainError("unknown format '" + format + "'");
}

}  // namespace bgkit::cli
