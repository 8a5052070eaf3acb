#include "admlab/gaussian.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace admlab;

TEST(Gaussian, ClosedForms) {
    const GaussianModel m(2.0, 0.0, 1.0);
    EXPECT_DOUBLE_EQ(sample_mean_risk(m, 4), 1.0);
    const double w = shrinkage_weight(m, 4);
    EXPECT_NEAR(w, 1.0 / (1.0 + 4.0 * 1.0 / 4.0), 1e-15);
    EXPECT_LT(shrinkage_risk(m, 0.0, 4), sample_mean_risk(m, 4));
    // Crossing distance solves w^2 sigma^2/n + (1-w)^2 D^2 = sigma^2/n.
    const double d = shrinkage_crossing_distance(m, 4);
    EXPECT_NEAR(shrinkage_risk(m, d, 4), sample_mean_risk(m, 4), 1e-12);
    EXPECT_GT(shrinkage_risk(m, 2 * d, 4), sample_mean_risk(m, 4));
    EXPECT_THROW(GaussianModel(0.0, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(sample_mean_risk(m, 0), std::invalid_argument);
}

TEST(Gaussian, ShrinkageGainAtCenterForEveryTau) {
    for (double tau : {0.01, 0.5, 3.0, 100.0}) {
        const GaussianModel m(1.0, 1.0, tau);
        EXPECT_LT(shrinkage_risk(m, 1.0, 5), sample_mean_risk(m, 5));
    }
}

TEST(Gaussian, EProcessFactorHasUnitExpectation) {
    const GaussianModel m(1.5, 0.5, 1.0);
    for (double plug : {0.5, 0.0, 2.0, -3.0}) EXPECT_LE(gaussian_factor_expectation_deviation(plug, m), 1e-8);
    GaussianEProcessState s;
    EXPECT_DOUBLE_EQ(s.plug_in_mean(m), 0.5);
    s = gaussian_eprocess_update(s, 1.0, m);
    EXPECT_EQ(s.t, 1u);
    EXPECT_NEAR(s.log_value, 0.0, 1e-15);  // first plug-in equals mu0
}

TEST(Gaussian, ConformalIntervalSymmetric) {
    const double residuals[] = {0.1, 0.5, 0.2, 0.9, 0.3, 0.4, 0.6, 0.8, 0.7};
    const Interval i = gaussian_conformal_interval(residuals, 2.0, 0.1);
    EXPECT_DOUBLE_EQ(2.0 - i.lower, i.upper - 2.0);
    const Interval wide = gaussian_conformal_interval(residuals, 2.0, 0.01);
    EXPECT_TRUE(std::isinf(wide.upper));
}

TEST(Gaussian, SeparationReportPasses) {
    const GaussianModel m(1.0, 0.0, 1.0);
    GaussianLabConfig cfg;
    cfg.risk_replications = 20000;
    cfg.ville_replications = 2000;
    const auto report = separation_report(m, cfg);
    EXPECT_TRUE(report["sample_mean_blackwell"]["pass"].get<bool>());
    EXPECT_TRUE(report["eprocess_anytime_valid"]["pass"].get<bool>());
    EXPECT_TRUE(report["conformal_coverage"]["pass"].get<bool>());
    EXPECT_TRUE(report["all_pass"].get<bool>());
}
