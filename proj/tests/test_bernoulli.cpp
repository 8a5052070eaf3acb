#include "admlab/bernoulli.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace admlab;

TEST(Predictors, Values) {
    EXPECT_DOUBLE_EQ(conjugate_predict(ConjugatePredictor::jeffreys(), 0, 0), 0.5);
    EXPECT_DOUBLE_EQ(conjugate_predict(ConjugatePredictor::laplace(), 3, 4), 4.0 / 6.0);
    EXPECT_THROW(conjugate_predict(ConjugatePredictor::jeffreys(), 5, 4), std::invalid_argument);
    EXPECT_THROW(plugin_predict(0, 0), std::invalid_argument);
    EXPECT_THROW(ConjugatePredictor(0.0, 1.0), std::invalid_argument);
    EXPECT_DOUBLE_EQ(plugin_predict(2, 8), 0.25);
}

TEST(Martingale, BayesAndPluginDeviationsVanish) {
    EXPECT_LE(bayes_martingale_deviation(ConjugatePredictor::jeffreys(), 50), 1e-12);
    EXPECT_LE(bayes_martingale_deviation({3.0, 0.2}, 50), 1e-12);
    EXPECT_LE(plugin_self_martingale_deviation(50), 1e-12);
}

TEST(Dominance, PluginDominatedEverywhere) {
    std::vector<double> grid;
    for (int i = 1; i < 100; ++i) grid.push_back(i / 100.0);
    for (std::size_t n : {1u, 2u, 17u, 100u}) {
        const auto cert = dominance_certificate(n, grid);
        EXPECT_TRUE(cert.all_dominated);
        EXPECT_EQ(cert.entries.size(), grid.size());
    }
}

TEST(BoundaryFraction, ExactValues) {
    EXPECT_NEAR(boundary_fraction_exact(5, 0.3), 0.16807 + 0.00243, 1e-15);
    EXPECT_NEAR(boundary_fraction_exact(10, 0.3), 0.028253, 1e-6);
    EXPECT_DOUBLE_EQ(boundary_fraction_exact(1, 0.3), 1.0);
}

// Integrated risk against a direct quadrature over the Beta(a,b) density.
TEST(IntegratedRisk, MatchesQuadrature) {
    const ConjugatePredictor prior(2.0, 3.0);
    const auto rule = conjugate_rule(ConjugatePredictor::jeffreys(), 6);
    boost::math::quadrature::tanh_sinh<double> q;
    const double norm = std::tgamma(5.0) / (std::tgamma(2.0) * std::tgamma(3.0));
    const double direct = q.integrate(
        [&](double th) { return norm * th * (1 - th) * (1 - th) * exact_risk(rule, th).value(); }, 1e-12, 1 - 1e-12);
    EXPECT_NEAR(beta_prior_integrated_risk(rule, prior).value(), direct, 1e-9);
    EXPECT_TRUE(beta_prior_integrated_risk(plugin_rule(6), prior).is_infinite());
}

TEST(IntegratedRisk, ConjugateRuleIsBayesForItsPrior) {
    const ConjugatePredictor prior = ConjugatePredictor::jeffreys();
    const double own = beta_prior_integrated_risk(conjugate_rule(prior, 8), prior).value();
    for (double a : {0.3, 1.0, 2.0}) {
        EXPECT_GT(beta_prior_integrated_risk(conjugate_rule({a, a + 0.1}, 8), prior).value(), own);
    }
}

TEST(Table2, ExactColumnAndDeterminism) {
    ExperimentConfig cfg = table2_config();
    cfg.replications = 2000;
    const auto a = run_table2(cfg);
    const auto b = run_table2(cfg);
    ASSERT_EQ(a.size(), 5u);
    const double paper[] = {0.692, 0.659, 0.631, 0.621, 0.616};
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i].bayes_risk_exact, paper[i], 0.002);
        EXPECT_NEAR(a[i].bayes_risk_mc.mean, a[i].bayes_risk_exact, 4 * a[i].bayes_risk_mc.mc_standard_error);
        EXPECT_TRUE(a[i].plugin_risk_exact.is_infinite());
        EXPECT_EQ(a[i].bayes_risk_mc.mean, b[i].bayes_risk_mc.mean);
        EXPECT_GT(a[i].excess, 0.0);
        if (i > 0) EXPECT_LT(a[i].excess, a[i - 1].excess);
    }
}
