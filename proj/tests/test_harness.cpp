#include "admlab/harness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace admlab;

TEST(Summarize, Basics) {
    const double ones[] = {1, 1, 1};
    const auto s = summarize(std::span<const double>(ones));
    EXPECT_DOUBLE_EQ(s.mean, 1.0);
    EXPECT_DOUBLE_EQ(s.mc_standard_error, 0.0);

    const double two[] = {0, 2};
    const auto t = summarize(std::span<const double>(two));
    EXPECT_DOUBLE_EQ(t.mean, 1.0);
    EXPECT_DOUBLE_EQ(t.mc_standard_error, 1.0);

    const RiskValue mixed[] = {RiskValue::finite(1.0), RiskValue::infinity()};
    const auto m = summarize(std::span<const RiskValue>(mixed));
    EXPECT_DOUBLE_EQ(m.mean, 1.0);
    EXPECT_EQ(m.count_infinite, 1u);
    EXPECT_EQ(m.count_finite, 1u);

    EXPECT_THROW(summarize(std::span<const double>()), std::invalid_argument);
}

TEST(Summarize, PermutationInvariantToRoundoff) {
    std::vector<double> v(10007);
    Philox4x32 gen(5, 0);
    for (auto& x : v) x = uniform01(gen) * 1e3;
    const double a = summarize(std::span<const double>(v)).mean;
    std::reverse(v.begin(), v.end());
    std::rotate(v.begin(), v.begin() + 977, v.end());
    const double b = summarize(std::span<const double>(v)).mean;
    EXPECT_NEAR(a, b, 1e-12 * std::abs(a));
}

TEST(ParallelMap, ResultIndependentOfThreadCount) {
    auto fn = [](std::size_t i) {
        Philox4x32 g = derive_substream(11, i);
        return uniform01(g);
    };
    const auto one = parallel_map(1000, 1, fn);
    const auto four = parallel_map(1000, 4, fn);
    EXPECT_EQ(one, four);
}

TEST(ParallelMap, RethrowsTaskException) {
    auto fn = [](std::size_t i) -> int {
        if (i == 17) throw std::runtime_error("boom");
        return 0;
    };
    EXPECT_THROW(parallel_map(50, 3, fn), std::runtime_error);
}

TEST(Config, FileAndValidation) {
    ExperimentConfig c;
    std::istringstream in("# comment\nseed = 7\nreps=12\nlooks = 5,10\n\nscenario = B\n");
    load_config_file(c, in);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.replications, 12u);
    EXPECT_EQ(c.looks, (std::vector<std::size_t>{5, 10}));
    EXPECT_EQ(c.scenario, "B");
    EXPECT_THROW(apply_setting(c, "nonsense", "1"), std::invalid_argument);
    EXPECT_THROW(apply_setting(c, "reps", "abc"), std::invalid_argument);
    c.alpha = 1.5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, ToStringOmitsThreads) {
    ExperimentConfig a;
    ExperimentConfig b;
    b.threads = 8;
    EXPECT_EQ(a.to_string(), b.to_string());
    EXPECT_NE(a.to_string().find("seed=42"), std::string::npos);
}
