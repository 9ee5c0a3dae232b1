// Acceptance suite: one PASS/FAIL line per criterion, with measured runtime.
// Usage: acceptance [path-to-bgkit-cli]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "bgkit/bgkit.hpp"
#include "commands.hpp"

using namespace bgkit;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<Outcome()> body;
};

int run_all(const std::vector<Criterion>& cs) {
    int failed = 0;
    for (const auto& c : cs) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt < c.time_limit_s;
        const bool ok = o.ok && in_time;
        if (!ok) ++failed;
        std::printf("%s  [%d] %s: %s; %.3f s (limit %g s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), dt, c.time_limit_s, in_time ? "" : " TOO SLOW");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(cs.size()) - failed, cs.size());
    return failed == 0 ? 0 : 1;
}

std::vector<double> open_grid(double a, double b, int n) {  // (a, b], n points
    std::vector<double> g;
    for (int i = 1; i <= n; ++i) g.push_back(a + (b - a) * i / n);
    return g;
}

Outcome moments() {
    double worst = 0.0;
    bool honest = true;
    for (double K : {0.25, 0.5, 0.75, 1.0, 2.5})
        for (unsigned n = 0; n <= 8; ++n) {
            const auto m = bg_moment(K, n);
            worst = std::max(worst, m.rel_err());
            honest = honest && m.err_bound >= std::abs(m.value - m.expected);
        }
    return {worst <= 1e-10 && honest,
            "max rel err " + sci(worst) + " (tol 1e-10), err_bound honest: " + (honest ? "yes" : "no")};
}

Outcome iwanami() {
    double worst = 0.0;
    int points = 0;
    for (double a : {0.25, 0.6, 1.0})
        for (double b : {0.1, 0.35, 0.75})
            for (double s : {0.5, 1.0, 2.0}) {
                worst = std::max(worst, iwanami_check(a, b, s).rel_err);
                ++points;
            }
    return {worst <= 1e-10 && points == 27, std::to_string(points) + " points, max rel err " + sci(worst) + " (tol 1e-10)"};
}

Outcome perelomov() {
    const auto grid = parse_grid("0:0.95:0.005");
    double worst = 0.0;
    bool same = true;
    for (double K : {1.0, 1.5, 2.0}) {
        const auto rep = compare_perelomov(K, grid);
        same = same && rep.verdict == Verdict::Same;
        for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(rep.a[i] - rep.b[i]) / rep.a[i]);
    }
    return {worst <= 1e-12 && same, "max pointwise rel diff " + sci(worst) + " (tol 1e-12), verdicts SAME"};
}

Outcome disagreement() {
    std::string detail;
    bool ok = true;
    for (double K : {0.75, 1.25, 2.5}) {
        const auto rep = compare_measures(K, open_grid(0.0, 2.0, 400));
        ok = ok && rep.max_abs_deviation > 1e-2;
        detail += "K=" + format_double(K) + " dev " + sci(rep.max_abs_deviation) + ", ";
    }
    CompareOptions opt;
    opt.fit = true;
    const double K = 1.25;
    const auto rep = compare_measures(K, parse_grid("0.01:0.1:0.001"), opt);
    const double e_bg = std::abs(rep.fit_a->normalized_c2() - bg_r2_coefficient(K));
    const double e_om = std::abs(rep.fit_b->normalized_c2() - omega_r2_coefficient(K));
    ok = ok && e_bg <= 1e-4 && e_om <= 1e-4 && rep.verdict == Verdict::Different;
    detail += "K=1.25 fitted c2 bg " + format_double(rep.fit_a->normalized_c2()).substr(0, 10) + " (err " + sci(e_bg) +
              "), omega " + format_double(rep.fit_b->normalized_c2()).substr(0, 10) + " (err " + sci(e_om) + ")";
    return {ok, detail};
}

Outcome appendix_forms() {
    double worst = 0.0;
    for (double r : open_grid(0.0, 5.0, 500)) {
        auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
        worst = std::max({worst, rel(bg_symplectic_closed(0.25, r), appendix::symplectic_quarter(r)),
                          rel(bg_symplectic_closed(0.75, r), appendix::symplectic_three_quarters(r)),
                          rel(bg_density(0.25, r), appendix::bg_density_quarter(r)),
                          rel(bg_density(0.75, r), appendix::bg_density_three_quarters(r))});
    }
    return {worst <= 1e-12, "500 points, max rel err " + sci(worst) + " (tol 1e-12)"};
}

Outcome algebra() {
    cli::detail::Uniform u(42);
    const int T = 10;
    double su = 0.0, un = 0.0, eig = 0.0;
    for (double K : {0.25, 0.5, 0.75, 1.0, 2.5}) {
        const SU11Rep rep(K, T);
        for (int k = 0; k < 5; ++k) {
            CoeffVector<> v(T);
            for (int n = 0; n <= T; ++n) v[n] = u.unit_square();
            su = std::max({su, max_norm(commutator_defect_K3_Kplus(rep, v), T - 2),
                           max_norm(commutator_defect_Kminus_Kplus(rep, v), T - 2)});
        }
        const SU11Rep rep40(K, 40);
        for (double mag : {0.5, 1.0, 2.0, 4.0})
            for (int k = 0; k < 8; ++k) eig = std::max(eig, eigen_residual(rep40, std::polar(mag, 2 * std::numbers::pi * k / 8)));
    }
    for (int N = 1; N <= 3; ++N) {
        const UN1Rep rep(N, 1.5, T);
        for (int k = 0; k < 5; ++k) {
            MultiCoeff<> v;
            for (const auto& m : monomials(N, T)) v.terms[m] = u.unit_square();
            for (int a = 1; a <= N + 1; ++a)
                for (int b = 1; b <= N + 1; ++b)
                    for (int c = 1; c <= N + 1; ++c)
                        for (int d = 1; d <= N + 1; ++d) un = std::max(un, structure_check(rep, a, b, c, d, v));
        }
    }
    eig = std::max({eig, extended_eigen_residual(UN1Rep(2, 0.6, 30), {1.2, -0.7}),
                    extended_eigen_residual(UN1Rep(3, 2.2, 20), {1.0, std::complex<double>(0, 1), 0.5})});
    const bool ok = su <= 1e-12 && un <= 1e-12 && eig <= 1e-12;
    return {ok, "su(1,1) " + sci(su) + ", u(N,1) N=1..3 " + sci(un) + ", eigen " + sci(eig) + " (tol 1e-12)"};
}

Outcome fock() {
    double coeff = 0.0, overlap = 0.0;
    cli::detail::Uniform u(42);
    for (int N : {1, 2})
        for (int K : {1, 2, 3}) {
            const int T = 25;
            const FockBasis b(N, K, T);
            std::vector<std::complex<double>> z(N);
            for (auto& x : z) x = (u.unit_square() - std::complex<double>(0.5, 0.5)) * 2.0;
            const auto f = fock_bg_state(b, z);
            const auto a = extended_bg_state(UN1Rep(N, K, T), z);
            for (int i = 0; i < b.dim(); ++i) {
                const auto& n = b.state(i);
                if (n.degree() > T - 2) continue;
                const auto expect = a.get(n) * fock_basis_scale(n, K);
                coeff = std::max(coeff, std::abs(f[i] - expect) / std::abs(expect));
            }
            const FockBasis b40(N, K, 40);
            for (int k = 0; k < 4; ++k) {
                std::vector<std::complex<double>> p(N), q(N);
                double np = 0, nq = 0;
                for (int j = 0; j < N; ++j) {
                    p[j] = u.unit_square() - std::complex<double>(0.5, 0.5);
                    q[j] = u.unit_square() - std::complex<double>(0.5, 0.5);
                    np += std::norm(p[j]);
                    nq += std::norm(q[j]);
                }
                for (auto& x : p) x *= 1.5 / std::sqrt(np);
                for (auto& x : q) x *= 1.5 / std::sqrt(nq);
                overlap = std::max(overlap, fock_overlap(b40, p, q).rel_diff());
            }
        }
    return {coeff <= 1e-13 && overlap <= 1e-12,
            "coefficient families " + sci(coeff) + " (tol 1e-13), overlap " + sci(overlap) + " (tol 1e-12)"};
}

Outcome un1_moments() {
    double worst = 0.0;
    int count = 0;
    for (double K : {0.3, 1.0, 2.7})
        for (const auto& m : monomials(2, 4)) {
            worst = std::max(worst, un1_moment(K, 2, {unsigned(m[0]), unsigned(m[1])}).rel_err());
            ++count;
        }
    return {worst <= 1e-8, std::to_string(count) + " moments, max rel err " + sci(worst) + " (tol 1e-8)"};
}

std::vector<std::vector<std::string>> cli_invocations() {
    return {{"moments", "--K", "0.75", "--n-max", "8"},
            {"moments", "--K", "0.25", "--n-max", "4"},
            {"moments", "--K", "2", "--N", "2", "--n-max", "3"},
            {"compare", "--K", "0.25", "--r", "0.05:3:0.05"},
            {"compare", "--perelomov", "--K", "1.5", "--rho", "0:0.95:0.01"},
            {"compare", "--K", "1.25", "--fit"},
            {"algebra", "--N", "3"},
            {"eigen", "--K", "2", "--N", "2"},
            {"kernel", "--K", "3", "--N", "2"},
            {"appendix"},
            {"iwanami"}};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome determinism(const std::string& cli_path) {
    int checked = 0;
    if (cli_path.empty()) {
        // in-process fallback
        for (const char* c : {"moments", "compare", "algebra", "eigen", "kernel", "appendix", "iwanami"}) {
            cli::RunConfig cfg;
            cfg.command = c;
            cfg.K = std::string(c) == "compare" ? 1.25 : 0.75;
            for (const char* fmt : {"csv", "json"}) {
                if (cli::render(cli::run(cfg), fmt) != cli::render(cli::run(cfg), fmt))
                    return {false, std::string("in-process output differs: ") + c};
                ++checked;
            }
        }
        return {true, std::to_string(checked) + " in-process renders identical (no CLI path given)"};
    }
    const auto dir = std::filesystem::temp_directory_path() / ("bgkit_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    for (const auto& args : cli_invocations()) {
        for (const char* fmt : {"csv", "json"}) {
            std::string outs[2];
            for (int k = 0; k < 2; ++k) {
                const auto out = dir / ("run" + std::to_string(k));
                std::string cmd = "env -u BGKIT_TOL '" + cli_path + "'";
                for (const auto& a : args) cmd += " " + a;
                cmd += std::string(" --format ") + fmt + " --out '" + out.string() + "' 2>/dev/null";
                const int rc = std::system(cmd.c_str());
                if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) == cli::kExitError)
                    return {false, "command failed: " + cmd};
                outs[k] = slurp(out);
            }
            if (outs[0].empty() || outs[0] != outs[1]) return {false, "output differs: " + args.front()};
            ++checked;
        }
    }
    std::filesystem::remove_all(dir);
    return {true, std::to_string(checked) + " CLI invocations (csv and json) byte-identical on re-run"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";
    const std::vector<Criterion> cs{
        {1, "resolution-of-unity moments", 5.0, moments},
        {2, "Bessel-K integral formula", 5.0, iwanami},
        {3, "Perelomov agreement", 1.0, perelomov},
        {4, "BG disagreement", 2.0, disagreement},
        {5, "appendix closed forms", 1.0, appendix_forms},
        {6, "algebra suites", 10.0, algebra},
        {7, "Fock/analytic consistency", 10.0, fock},
        {8, "U(N,1) moments at non-integer K", 30.0, un1_moments},
        {9, "CLI determinism", 60.0, [&] { return determinism(cli_path); }},
    };
    return run_all(cs);
}
