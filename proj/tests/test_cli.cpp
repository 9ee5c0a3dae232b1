#include <gtest/gtest.h>

#include "bgkit/report.hpp"
#include "commands.hpp"

using namespace bgkit;
using namespace bgkit::cli;

namespace {
RunConfig config(std::string command) {
    RunConfig c;
    c.command = std::move(command);
    return c;
}
}  // namespace

TEST(Grid, ParsesInclusiveEndpoints) {
    const auto g = parse_grid("0:0.95:0.01");
    ASSERT_EQ(g.size(), 96u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_NEAR(g.back(), 0.95, 1e-15);
    EXPECT_EQ(parse_grid("0.05:3:0.05").size(), 60u);
    EXPECT_EQ(parse_grid("0.01:0.1:0.001").size(), 91u);
    EXPECT_EQ(parse_grid("1:1:0.5").size(), 1u);
}

TEST(Grid, RejectsMalformed) {
    for (const char* bad : {"", "1:2", "1:2:3:4", "a:2:0.1", "0:1:0", "1:0:0.1", "0:1:-1", "0:1:0.1x"})
        EXPECT_THROW(parse_grid(bad), DomainError) << bad;
}

TEST(Report, CsvLayout) {
    Report r;
    r.set("K", 0.1);
    r.set("N", 2);
    r.set("K", 0.75);  // overwrite keeps position
    r.columns = {"a", "b", "c"};
    r.add_row({1.0 / 3.0, 7LL, std::string("x")});
    r.verdict = "PASS";
    r.max_err = 0.0;
    EXPECT_EQ(to_csv(r), "#K=0.75\n#N=2\n#verdict=PASS\n#max_err=0\na,b,c\n0.33333333333333331,7,x\n");
    EXPECT_THROW(r.add_row({1.0}), DomainError);
}

TEST(Report, JsonSchema) {
    Report r;
    r.set("K", 0.75);
    r.columns = {"n", "v"};
    r.add_row({std::string("0"), std::nan("")});
    r.verdict = "SAME";
    r.max_err = 1e-16;
    const auto j = nlohmann::json::parse(to_json(r));
    EXPECT_EQ(j["config"]["K"], "0.75");
    EXPECT_TRUE(j["rows"][0]["v"].is_null());
    EXPECT_EQ(j["verdict"], "SAME");
    EXPECT_DOUBLE_EQ(j["max_err"].get<double>(), 1e-16);
}

TEST(Commands, MomentsPassAndEchoConfig) {
    auto c = config("moments");
    c.K = 0.75;
    const auto res = run(c);
    EXPECT_EQ(res.exit_code, kExitOk);
    EXPECT_EQ(res.report.rows.size(), 9u);
    const auto csv = to_csv(res.report);
    EXPECT_NE(csv.find("#K=0.75\n"), std::string::npos);
    EXPECT_NE(csv.find("#seed=42\n"), std::string::npos);

    c.N = 2;
    c.K = 2.0;
    c.n_max = 3;
    const auto multi = run(c);
    EXPECT_EQ(multi.exit_code, kExitOk);
    EXPECT_EQ(multi.report.rows.size(), 10u);  // C(5, 2)
}

TEST(Commands, MomentsFailWhenToleranceTooTight) {
    auto c = config("moments");
    c.K = 0.75;
    c.n_max = 3;
    c.tol = 1e-30;
    EXPECT_EQ(run(c).exit_code, kExitCheckFailed);
}

TEST(Commands, CompareExitCodesEncodeVerdict) {
    auto c = config("compare");
    c.K = 0.25;
    c.r_grid = "0.05:3:0.05";
    auto res = run(c);
    EXPECT_EQ(res.report.verdict, "DIFFERENT");
    EXPECT_EQ(res.exit_code, kExitCheckFailed);
    c.expect = "DIFFERENT";
    EXPECT_EQ(run(c).exit_code, kExitOk);
    c.expect = "SAME";
    EXPECT_EQ(run(c).exit_code, kExitUnexpectedVerdict);

    auto p = config("compare");
    p.K = 1.5;
    p.perelomov = true;
    p.rho_grid = "0:0.95:0.01";
    res = run(p);
    EXPECT_EQ(res.report.verdict, "SAME");
    EXPECT_EQ(res.exit_code, kExitOk);
    EXPECT_EQ(res.report.columns.front(), "rho");
}

TEST(Commands, CompareFitReportsCoefficients) {
    auto c = config("compare");
    c.K = 1.25;
    c.fit = true;
    const auto csv = to_csv(run(c).report);
    EXPECT_NE(csv.find("#fit_bg_c2=-1.99999"), std::string::npos);
    EXPECT_NE(csv.find("#fit_omega_c2=-0.628571"), std::string::npos);
    EXPECT_NE(csv.find("#r=0.01:0.1:0.001"), std::string::npos);
}

TEST(Commands, AllCommandsDeterministic) {
    std::vector<RunConfig> cfgs;
    auto add = [&](RunConfig c) { cfgs.push_back(std::move(c)); };
    {
        auto c = config("moments");
        c.K = 0.25;
        c.n_max = 4;
        add(c);
    }
    {
        auto c = config("compare");
        c.K = 1.25;
        c.fit = true;
        add(c);
    }
    {
        auto c = config("algebra");
        c.N = 2;
        add(c);
    }
    {
        auto c = config("eigen");
        c.K = 2.0;
        add(c);
    }
    {
        auto c = config("kernel");
        c.K = 2.0;
        add(c);
    }
    add(config("appendix"));
    add(config("iwanami"));
    for (const auto& c : cfgs) {
        for (const char* fmt : {"csv", "json"}) {
            const auto a = render(run(c), fmt);
            const auto b = render(run(c), fmt);
            EXPECT_EQ(a, b) << c.command << " " << fmt;
        }
        EXPECT_EQ(run(c).exit_code, c.command == "compare" ? kExitCheckFailed : kExitOk) << c.command;
    }
}

TEST(Commands, SeedChangesRandomVectors) {
    auto c = config("eigen");
    const auto a = render(run(c), "csv");
    c.seed = 7;
    const auto b = render(run(c), "csv");
    EXPECT_NE(a, b);
}

TEST(Commands, ErrorsAreDomainErrors) {
    EXPECT_THROW(run(config("nope")), DomainError);
    EXPECT_THROW(run(config("moments")), DomainError);
    auto c = config("compare");
    c.K = 1.0;
    c.fit = true;
    EXPECT_THROW(run(c), DomainError);
    auto i = config("iwanami");
    i.alpha = 0.5;
    EXPECT_THROW(run(i), DomainError);
    EXPECT_THROW(render(CommandResult{}, "xml"), DomainError);
}
