#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "circres/report.hpp"

#ifndef CIRCRES_CLI_PATH
#error "CIRCRES_CLI_PATH must point at the circres binary"
#endif

using circres::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(CIRCRES_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);)
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<std::string> cells(const std::string& row) {
    std::vector<std::string> out;
    std::stringstream ss(row);
    for (std::string c; std::getline(ss, c, ',');) out.push_back(c);
    if (!row.empty() && row.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

TEST(Cli, ComputeClosedResistance) {
    const auto r = run("compute --n 5 --delete 1 --quantity resistance --u 0 --v 2 --method closed --exact");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(lines(r.out).at(0));
    EXPECT_EQ(j["value"], "4/5");
    EXPECT_EQ(j["representation"], "rational");
    const auto f = run("compute --n 5 --delete 1 --quantity resistance --u 0 --v 2 --method closed");
    EXPECT_NEAR(json::parse(f.out)["value"].get<double>(), 0.8, 1e-14);
}

TEST(Cli, ComputeTreesExact) {
    const auto r = run("compute --n 7 --delete 1 --quantity trees --method closed --exact");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["value"], "1183");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("compute --n 6 --delete 1 --quantity trees --method closed").code, 2);
    EXPECT_EQ(run("compute --n 9 --delete 3 --quantity trees --method closed").code, 2);
    EXPECT_EQ(run("compute --n 6 --delete 1,2 --quantity trees").code, 3);
    EXPECT_EQ(run("compute --n 2").code, 2);
    EXPECT_EQ(run("compute --n 7 --weights 1:x").code, 2);
    EXPECT_EQ(run("compute --n 7 --method nope").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, AllPairsJsonLinesRoundTrip) {
    const auto r = run("compute --n 9 --delete 2 --quantity hitting --method closed");
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 8u);
    for (const auto& line : ls) {
        const auto j = json::parse(line);
        EXPECT_EQ(circres::result_to_json(circres::result_from_json(j)).dump(), line);
        EXPECT_TRUE(j["metadata"].contains("delta_q"));
    }
}

TEST(Cli, CsvColumns) {
    const auto r = run("compute --n 7 --delete 1 --quantity forests --method oracle --format csv");
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 7u);
    EXPECT_EQ(ls[0], "n,s_or_r,quantity,method,q,u,v,value,exact_value,limit,deviation");
    const auto c = cells(ls[1]);
    ASSERT_EQ(c.size(), 11u);
    EXPECT_EQ(c[0], "7");
    EXPECT_EQ(c[1], "1");
    EXPECT_EQ(c[8], "624");
}

TEST(Cli, WeightedSpec) {
    const auto r = run("compute --n 6 --weights 1:1/2,3:2 --quantity resistance --method oracle --q 3");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["spec"]["weights"]["2"], "0");
    EXPECT_EQ(j["spec"]["weights"]["3"], "2");
}

TEST(Cli, MonteCarloReproducible) {
    const std::string args = "compute --n 5 --delete 1 --quantity hitting --method monte-carlo --q 2 --walks 20000 --seed 5";
    const auto a = json::parse(run(args + " --threads 1").out);
    const auto b = json::parse(run(args + " --threads 3").out);
    EXPECT_EQ(a["value"], b["value"]);
    EXPECT_EQ(a["metadata"]["seed"], 5);
}

TEST(Cli, Eigenvalues) {
    const auto r = run("eig --n 5 --delete 1");
    ASSERT_EQ(r.code, 0);
    const auto v = json::parse(r.out)["value"];
    ASSERT_EQ(v.size(), 5u);
    EXPECT_NEAR(v[1].get<double>(), 3.6180339887498949, 1e-12);
    EXPECT_EQ(run("eig --n 6 --delete 1,2").code, 0);
}

TEST(Cli, OracleSubcommand) {
    const auto r = run("oracle --n 7 --delete 1 --quantity trees");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["value"], "1183");
}

TEST(Cli, VerifyWritesReport) {
    const auto dir = std::filesystem::temp_directory_path() / "circres_cli_test";
    std::filesystem::remove_all(dir);
    const std::string env = "CIRCRES_OUTPUT_DIR=" + dir.string();
    EXPECT_EQ(run("verify --n-min 5 --n-max 15 --odd-only", env).code, 0);
    std::ifstream in(dir / "verify-report.json");
    ASSERT_TRUE(in.good());
    const auto report = json::parse(in);
    EXPECT_TRUE(report["summary"]["all_pass"].get<bool>());
    EXPECT_GT(report["summary"]["total"].get<int>(), 0);

    EXPECT_EQ(run("verify --n 9 --r 2 --output r2.json", env).code, 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "r2.json"));

    EXPECT_EQ(run("verify --n 6 --delete 3 --output even.json", env).code, 0);
    std::ifstream even(dir / "even.json");
    const auto even_report = json::parse(even);
    bool noted = false;
    for (const auto& c : even_report["cases"])
        if (c.contains("note") && c["note"].get<std::string>().find("closed forms skipped") != std::string::npos)
            noted = true;
    EXPECT_TRUE(noted);

    EXPECT_EQ(run("verify --n 9 --r 1 --tol-resistance 0 --tol-hitting 0 --tol-forests 0 --tol-kirchhoff 0 --tol-trees 0 "
                  "--tol-eigen 0 --output fail.json",
                  env)
                  .code,
              1);
    EXPECT_TRUE(std::filesystem::exists(dir / "fail.json"));
    EXPECT_EQ(run("verify --n 40").code, 2);
    std::filesystem::remove_all(dir);
}

TEST(Cli, SweepTreeRatio) {
    const auto r = run("sweep --quantity tree-ratio --n-max 2001 --format csv");
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    ASSERT_GE(ls.size(), 3u);
    EXPECT_EQ(ls.back().rfind("# rows=", 0), 0u);
    const auto last = cells(ls[ls.size() - 2]);
    EXPECT_EQ(last[0], "2001");
    EXPECT_LT(std::abs(std::stod(last[7]) - 0.135335), 1e-2);
}

TEST(Cli, SweepResistanceScaled) {
    const auto r = run("sweep --quantity resistance-scaled --q 3 --n-max 10001");
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    const auto last = json::parse(ls[ls.size() - 2]);
    EXPECT_EQ(last["n"], 10001);
    EXPECT_LT(std::abs(last["value"].get<double>() - 1.0), 1e-2);
    const auto footer = json::parse(ls.back());
    EXPECT_EQ(footer["footer"]["skipped_even"], 0);
}

TEST(Cli, SweepKirchhoffMonotone) {
    const auto r = run("sweep --quantity kirchhoff-scaled --n-max 2001 --step 1");
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    double prev = INFINITY;
    int prev_n = 0;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
        const auto j = json::parse(ls[i]);
        const double gap = std::abs(j["deviation"].get<double>());
        EXPECT_LT(gap, prev);
        EXPECT_GT(j["n"].get<int>(), prev_n);
        prev = gap;
        prev_n = j["n"].get<int>();
    }
    EXPECT_GT(json::parse(ls.back())["footer"]["skipped_even"].get<int>(), 0);
    EXPECT_EQ(run("sweep --quantity nope").code, 2);
}
