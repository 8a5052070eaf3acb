#include "admlab/eprocess.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace admlab;

namespace {

// Marginal likelihood ratio of the Beta(1/2,1/2) mixture against theta0,
// rebuilt from lgamma so that it shares no code with the library.
double log_e_value(int s, int t, double theta0) {
    const double lb = std::lgamma(s + 0.5) + std::lgamma(t - s + 0.5) - std::lgamma(t + 1.0);
    const double lb0 = 2 * std::lgamma(0.5) - std::lgamma(1.0);
    return lb - lb0 - s * std::log(theta0) - (t - s) * std::log(1 - theta0);
}

// Exact crossing probability under H0 by dynamic programming over s,
// removing mass once a path has been stopped.
double dp_rejection(int horizon, const std::vector<int>& looks, bool every_step, bool naive) {
    std::vector<double> mass{1.0};
    double rejected = 0.0;
    std::size_t next_look = 0;
    for (int t = 1; t <= horizon; ++t) {
        std::vector<double> next(t + 1, 0.0);
        for (int s = 0; s < t; ++s) {
            next[s] += 0.5 * mass[s];
            next[s + 1] += 0.5 * mass[s];
        }
        const bool look = next_look < looks.size() && looks[next_look] == t;
        if (look) ++next_look;
        if (every_step || look) {
            for (int s = 0; s <= t; ++s) {
                bool stop;
                if (naive) {
                    stop = std::abs(s - 0.5 * t) / std::sqrt(0.25 * t) > 1.96;
                } else {
                    stop = log_e_value(s, t, 0.5) >= std::log(20.0);
                }
                if (stop) {
                    rejected += next[s];
                    next[s] = 0.0;
                }
            }
        }
        mass = std::move(next);
    }
    return rejected;
}

}  // namespace

TEST(EProcess, RunningProductMatchesClosedForm) {
    EProcessState state(0.3);
    Philox4x32 gen(4, 0);
    for (int i = 0; i < 300; ++i) {
        state = state.update(bernoulli_draw(gen, 0.3));
        ASSERT_NEAR(state.log_value(), state.audit_log_value(), 1e-9);
        ASSERT_NEAR(state.log_value(), log_e_value(static_cast<int>(state.successes()), static_cast<int>(state.t()), 0.3),
                    1e-9);
    }
}

TEST(EProcess, Validation) {
    EXPECT_THROW(EProcessState(0.0), std::domain_error);
    EXPECT_THROW((void)EProcessState(0.5).update(2), std::invalid_argument);
    EXPECT_THROW(ville_reject(3.0, 1.5), std::domain_error);
    EXPECT_TRUE(ville_reject(20.0, 0.05));
    EXPECT_FALSE(ville_reject(19.99, 0.05));
}

TEST(EProcess, MartingaleDeviation) {
    EXPECT_LE(eprocess_martingale_deviation(0.5, 30), 1e-12);
    EXPECT_LE(eprocess_martingale_deviation(0.2, 30, ConjugatePredictor::laplace()), 1e-12);
}

TEST(NaivePeeking, RejectsOnExtremeLook) {
    std::vector<int> xs(20, 1);
    const std::size_t looks[] = {10, 20};
    EXPECT_TRUE(naive_peeking_test(xs, looks));
    std::vector<int> balanced;
    for (int i = 0; i < 20; ++i) balanced.push_back(i % 2);
    EXPECT_FALSE(naive_peeking_test(balanced, looks));
}

TEST(Table3, DynamicProgrammingOracle) {
    const std::vector<int> looks{10, 20, 50, 100, 200};
    const double e_cont = dp_rejection(200, looks, true, false);
    const double naive = dp_rejection(200, looks, false, true);
    EXPECT_NEAR(e_cont, 0.033289, 5e-6);
    EXPECT_NEAR(naive, 0.16741, 5e-5);
    // Ville: continuous monitoring never exceeds alpha.
    EXPECT_LE(e_cont, 0.05);

    ExperimentConfig cfg = table3_config();
    cfg.replications = 10000;
    const Table3Report mc = run_table3(cfg);
    EXPECT_NEAR(mc.eprocess_rejection.mean, e_cont, 4 * mc.eprocess_rejection.mc_standard_error);
    EXPECT_NEAR(mc.naive_rejection.mean, naive, 4 * mc.naive_rejection.mc_standard_error);
}

TEST(Table3, LooksOnlyMonitoring) {
    const std::vector<int> looks{10, 20, 50, 100, 200};
    const double oracle = dp_rejection(200, looks, false, false);
    EXPECT_NEAR(oracle, 0.00608, 5e-5);
    ExperimentConfig cfg = table3_config();
    cfg.replications = 10000;
    cfg.monitor_every_step = false;
    const Table3Report mc = run_table3(cfg);
    EXPECT_NEAR(mc.eprocess_rejection.mean, oracle, 4 * mc.eprocess_rejection.mc_standard_error + 1e-3);
}
