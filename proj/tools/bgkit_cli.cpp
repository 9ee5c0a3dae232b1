// bgkit command-line driver.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace bgkit::cli;

namespace {

struct Shared {
    RunConfig cfg;
    std::string out;
    std::string golden;
};

void add_common(CLI::App* sub, Shared& s) {
    sub->add_option("--K", s.cfg.K, "representation parameter K > 0");
    sub->add_option("--N", s.cfg.N, "number of raising directions (U(N,1))");
    sub->add_option("--trunc", s.cfg.trunc, "maximum monomial degree T");
    sub->add_option("--tol", s.cfg.tol, "pass/fail tolerance (default per command, or $BGKIT_TOL)");
    sub->add_option("--seed", s.cfg.seed, "seed for random test vectors")->capture_default_str();
    sub->add_option("--out", s.out, "write the report here instead of stdout");
    sub->add_option("--format", s.cfg.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for Barut-Girardello coherent states and their measures"};
    app.require_subcommand(1);
    Shared s;

    auto* moments = app.add_subcommand("moments", "resolution-of-unity moments n!(2K)_n");
    add_common(moments, s);
    moments->add_option("--n-max", s.cfg.n_max, "largest n (or |n| when --N is given)")->capture_default_str();

    auto* compare = app.add_subcommand("compare", "BG measure vs symplectic induced measure");
    add_common(compare, s);
    compare->add_flag("--perelomov", s.cfg.perelomov, "compare the Perelomov pair instead (control)");
    compare->add_flag("--fit", s.cfg.fit, "fit near-origin r^2 coefficients");
    compare->add_option("--r", s.cfg.r_grid, "radial grid start:stop:step");
    compare->add_option("--rho", s.cfg.rho_grid, "disc grid start:stop:step (with --perelomov)");
    compare->add_option("--expect", s.cfg.expect, "exit 0 only if the verdict equals this")
        ->check(CLI::IsMember({"SAME", "DIFFERENT", "INCONCLUSIVE"}));

    auto* algebra = app.add_subcommand("algebra", "commutators, structure constants, subsidiary condition");
    add_common(algebra, s);
    auto* eigen = app.add_subcommand("eigen", "lowering-operator eigen residuals");
    add_common(eigen, s);
    auto* kernel = app.add_subcommand("kernel", "completeness kernels and overlaps");
    add_common(kernel, s);

    auto* appendix = app.add_subcommand("appendix", "K = 1/4 and 3/4 closed forms and disagreement table");
    add_common(appendix, s);
    appendix->add_option("--r", s.cfg.r_grid, "radial grid start:stop:step");
    appendix->add_option("--golden", s.golden, "compare the rendered report with this file");

    auto* iwanami = app.add_subcommand("iwanami", "Bessel-K Mellin integral against Gamma products");
    add_common(iwanami, s);
    iwanami->add_option("--alpha", s.cfg.alpha);
    iwanami->add_option("--beta", s.cfg.beta);
    iwanami->add_option("--s", s.cfg.s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    s.cfg.command = app.get_subcommands().front()->get_name();
    if (!s.cfg.tol) {
        if (const char* env = std::getenv("BGKIT_TOL"); env && *env) {
            try {
                s.cfg.tol = std::stod(env);
            } catch (const std::exception&) {
                std::cerr << "error: BGKIT_TOL is not a number: " << env << "\n";
                return kExitError;
            }
        }
    }

    try {
        const CommandResult res = run(s.cfg);
        const std::string text = render(res, s.cfg.format);
        int code = res.exit_code;
        if (!s.golden.empty()) {
            std::ifstream g(s.golden, std::ios::binary);
            if (!g) throw bgkit::DomainError("cannot read golden file " + s.golden);
            std::stringstream buf;
            buf << g.rdbuf();
            if (buf.str() != text) {
                std::cerr << "golden mismatch: " << s.golden << "\n";
                if (code == kExitOk) code = kExitCheckFailed;
            }
        }
        if (s.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(s.out, std::ios::binary);
            f << text;
            if (!f) throw bgkit::DomainError("cannot write " + s.out);
        }
        std::cerr << s.cfg.command << ": " << res.report.verdict << " (max_err " << bgkit::format_double(res.report.max_err)
                  << ")\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
