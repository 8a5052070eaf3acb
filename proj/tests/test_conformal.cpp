#include "admlab/conformal.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace admlab;

namespace {

// Full conformal over the explicit augmented sample, one sequence at a time.
bool brute_keep(const std::vector<int>& xs, int y, double alpha) {
    std::vector<double> z(xs.begin(), xs.end());
    z.push_back(y);
    double m = 0.0;
    for (double v : z) m += v;
    m /= static_cast<double>(z.size());
    std::vector<double> scores;
    for (double v : z) scores.push_back(std::abs(v - m));
    const double test = scores.back();
    std::sort(scores.begin(), scores.end());
    const auto k = static_cast<std::size_t>(std::ceil((xs.size() + 1) * (1 - alpha) - 1e-9));
    if (k > scores.size()) return true;
    return test <= scores[k - 1];
}

double brute_coverage(std::size_t n, double theta, double alpha) {
    double total = 0.0;
    for (std::uint32_t bits = 0; bits < (1u << (n + 1)); ++bits) {
        std::vector<int> xs(n);
        double prob = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = static_cast<int>((bits >> i) & 1u);
            prob *= xs[i] ? theta : 1 - theta;
        }
        const int y = static_cast<int>((bits >> n) & 1u);
        prob *= y ? theta : 1 - theta;
        if (brute_keep(xs, y, alpha)) total += prob;
    }
    return total;
}

}  // namespace

TEST(ConformalRank, Values) {
    EXPECT_EQ(conformal_rank(500, 0.1), 451u);
    EXPECT_EQ(conformal_rank(9, 0.1), 9u);
    EXPECT_EQ(conformal_rank(5, 0.1), 6u);
    EXPECT_THROW(conformal_rank(5, 0.0), std::domain_error);
}

TEST(Calibrate, KthSmallestAndInfinity) {
    const double scores[] = {0.5, 0.1, 0.9, 0.3, 0.7, 0.2, 0.8, 0.4, 0.6};
    const auto c = calibrate(scores, 0.1);
    EXPECT_EQ(c.index, 9u);
    EXPECT_DOUBLE_EQ(c.quantile, 0.9);
    const double few[] = {0.1, 0.2};
    EXPECT_TRUE(std::isinf(calibrate(few, 0.1).quantile));
    const double bad[] = {-1.0};
    EXPECT_THROW(calibrate(bad, 0.1), std::invalid_argument);
    EXPECT_THROW(calibrate(std::span<const double>(), 0.1), std::invalid_argument);
    const Interval i = predict_interval(c);
    EXPECT_DOUBLE_EQ(i.lower, -i.upper);
}

TEST(BinarySet, MatchesBruteForceEnumeration) {
    for (double alpha : {0.05, 0.1, 0.2}) {
        for (std::size_t n = 1; n <= 10; ++n) {
            for (double theta : {0.1, 0.35, 0.5, 0.9}) {
                EXPECT_NEAR(exact_binary_coverage(n, theta, alpha), brute_coverage(n, theta, alpha), 1e-12)
                    << "n=" << n << " theta=" << theta << " alpha=" << alpha;
            }
        }
    }
}

TEST(BinarySet, CoverageNeverBelowNominal) {
    for (double alpha : {0.05, 0.1, 0.2}) {
        for (std::size_t n = 1; n <= 12; ++n) {
            for (int k = 1; k <= 9; ++k) EXPECT_GE(exact_binary_coverage(n, 0.1 * k, alpha), 1 - alpha - 1e-12);
        }
    }
    EXPECT_THROW(exact_binary_coverage(kMaxExactCoverageN + 1, 0.5, 0.1), std::invalid_argument);
}

TEST(BinarySet, SingletonForLongRun) {
    const auto set = binary_conformal_set(0, 20, 0.1);
    EXPECT_TRUE(set.contains0);
    EXPECT_FALSE(set.contains1);
    EXPECT_EQ(binary_conformal_set(1, 1, 0.1).size(), 2u);
}

TEST(ConstrainedBayesSet, MajorityOrBoth) {
    EXPECT_EQ(constrained_bayes_set(0, 0, 0.1, 0.5).size(), 2u);
    const auto s = constrained_bayes_set(20, 20, 0.1, 0.95);
    EXPECT_TRUE(s.contains1);
    EXPECT_FALSE(s.contains0);
    EXPECT_EQ(constrained_bayes_set(5, 10, 0.1, 0.85).size(), 2u);
    EXPECT_TRUE(constrained_bayes_set(0, 30, 0.1, 0.02).contains0);
}

TEST(Table4, ExchangeableCoverageAndDeterminism) {
    ExperimentConfig cfg = table4_config();
    cfg.replications = 1000;
    const auto a = run_table4(ShiftScenario::named("A"), cfg);
    const auto b = run_table4(ShiftScenario::named("A"), cfg);
    EXPECT_EQ(a.quantile.mean, b.quantile.mean);
    // Expected split-conformal coverage is 451/501.
    EXPECT_NEAR(a.coverage.mean, 451.0 / 501.0, 3 * a.coverage.mc_standard_error + 1e-3);
    const auto c = run_table4(ShiftScenario::named("C"), cfg);
    EXPECT_NEAR(c.coverage.mean, 451.0 / 501.0, 3 * c.coverage.mc_standard_error + 1e-3);
    EXPECT_THROW(ShiftScenario::named("D"), std::invalid_argument);
}

TEST(Table4, ShiftTowardSmallXOvercovers) {
    ExperimentConfig cfg = table4_config();
    cfg.replications = 500;
    const auto b = run_table4(ShiftScenario::named("B"), cfg);
    EXPECT_GT(b.coverage.mean, 0.93);
    std::ostringstream os;
    const Table4Report reports[] = {b};
    write_table4_csv(os, cfg, reports);
    EXPECT_NE(os.str().find("B,Unif,Beta(2,5),"), std::string::npos);
}
