#include "admlab/cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using admlab::run_cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"riskset", "--bogus"}).code, 2);
    const auto r = run({"eprocess", "--alpha", "1.5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("usage error"), std::string::npos);
    EXPECT_EQ(run({"tables", "--which", "7"}).code, 2);
    EXPECT_EQ(run({"riskset", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"riskset", "--theta1", "0.8", "--theta2", "0.2"}).code, 2);
}

TEST(Cli, UsageErrorLeavesNoFile) {
    const auto path = std::filesystem::temp_directory_path() / "admlab_cli_should_not_exist.csv";
    std::filesystem::remove(path);
    EXPECT_EQ(run({"eprocess", "--alpha", "2", "--out", path.string()}).code, 2);
    EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Cli, RisksetRowsAndInfToken) {
    const auto r = run({"riskset", "--n", "10"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), 2u + 1001u + 3u);
    EXPECT_NE(r.out.find("\nplugin,,inf,inf\n"), std::string::npos);
    EXPECT_EQ(r.out.rfind("# riskset ", 0), 0u);
    const auto j = run({"riskset", "--format", "json"});
    EXPECT_NE(j.out.find("\"inf\""), std::string::npos);
}

TEST(Cli, OutFileMatchesStdout) {
    const auto path = std::filesystem::temp_directory_path() / "admlab_cli_out.csv";
    ASSERT_EQ(run({"bernoulli", "--reps", "200", "--out", path.string()}).code, 0);
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    EXPECT_EQ(file.str(), run({"bernoulli", "--reps", "200"}).out);
    std::filesystem::remove(path);
}

TEST(Cli, TablesByteIdenticalAcrossRuns) {
    const std::vector<std::string> args{"tables", "--which", "3", "--reps", "500", "--seed", "7"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("seed=7 reps=500"), std::string::npos);
    const auto other = run({"tables", "--which", "3", "--reps", "500", "--seed", "8"});
    EXPECT_NE(a.out, other.out);
}

TEST(Cli, ThreadsDoNotChangeOutput) {
    const auto a = run({"tables", "--which", "2", "--reps", "300", "--threads", "1"});
    const auto b = run({"tables", "--which", "2", "--reps", "300", "--threads", "3"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ConfigFileApplies) {
    const auto path = std::filesystem::temp_directory_path() / "admlab_cli.cfg";
    {
        std::ofstream cfg(path);
        cfg << "# test\nreps = 123\nseed = 9\n";
    }
    const auto r = run({"eprocess", "--config", path.string()});
    EXPECT_NE(r.out.find("seed=9 reps=123"), std::string::npos);
    // Flags win over the file.
    const auto f = run({"eprocess", "--config", path.string(), "--reps", "50"});
    EXPECT_NE(f.out.find("reps=50"), std::string::npos);
    std::filesystem::remove(path);
    EXPECT_EQ(run({"eprocess", "--config", "/nonexistent/admlab.cfg"}).code, 2);
}

TEST(Cli, MatrixCheckExitsZero) {
    const auto r = run({"matrix", "--check", "--format", "text", "--reps", "2000", "--horizon", "5000"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("criterion 11 PASS"), std::string::npos);
    EXPECT_EQ(lines(r.out), 8u);
}

TEST(Cli, DefensiveAndGaussianFormats) {
    const auto d = run({"defensive", "--source", "adversary", "--horizon", "1000", "--stride", "100"});
    ASSERT_EQ(d.code, 0);
    EXPECT_NE(d.out.find("adversary,1000,"), std::string::npos);
    EXPECT_EQ(run({"defensive", "--source", "martian"}).code, 2);
    const auto g = run({"gaussian", "--reps", "2000", "--format", "json"});
    ASSERT_EQ(g.code, 0);
    EXPECT_NE(g.out.find("\"all_pass\""), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("riskset"), std::string::npos);
}
