#include "admlab/bernoulli.hpp"
#include "admlab/riskset.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace admlab;

namespace {

// Hand expansion of E_theta[-theta ln p_S - (1-theta) ln(1-p_S)] for n = 5.
double hand_risk_n5(double theta, double (*rule)(int)) {
    const double choose[] = {1, 5, 10, 10, 5, 1};
    double total = 0.0;
    for (int s = 0; s <= 5; ++s) {
        const double p = rule(s);
        total += choose[s] * std::pow(theta, s) * std::pow(1 - theta, 5 - s) *
                 -(theta * std::log(p) + (1 - theta) * std::log(1 - p));
    }
    return total;
}

}  // namespace

TEST(ExactRisk, MatchesHandOracleAtNFive) {
    const auto rule = conjugate_rule(ConjugatePredictor::jeffreys(), 5);
    for (double theta : {0.1, 0.3, 0.5, 0.8}) {
        const double hand = hand_risk_n5(theta, [](int s) { return (s + 0.5) / 6.0; });
        EXPECT_NEAR(exact_risk(rule, theta).value(), hand, 1e-13);
    }
    EXPECT_NEAR(exact_risk(rule, 0.3).value(), 0.6921033924, 1e-9);
}

TEST(ExactRisk, PluginIsInfinite) {
    for (std::size_t n : {1u, 5u, 40u}) EXPECT_TRUE(exact_risk(plugin_rule(n), 0.37).is_infinite());
}

TEST(PredictiveRule, Validation) {
    EXPECT_THROW(PredictiveRule(3, {0.1, 0.2}), std::invalid_argument);
    EXPECT_THROW(PredictiveRule(1, {0.1, 1.2}), std::domain_error);
}

TEST(BayesRule, PointMassGivesConstantRule) {
    const FiniteParamSpace space({0.3, 0.7});
    const auto rule = bayes_rule_for_prior(Prior({1.0, 0.0}), space, 6);
    for (double p : rule.probs()) EXPECT_DOUBLE_EQ(p, 0.3);
}

TEST(BayesRule, PosteriorMeanOracle) {
    const FiniteParamSpace space({0.3, 0.7});
    const double w = 0.4;
    const auto rule = bayes_rule_for_prior(Prior::two_point(w), space, 4);
    for (int s = 0; s <= 4; ++s) {
        const double l1 = w * std::pow(0.3, s) * std::pow(0.7, 4 - s);
        const double l2 = (1 - w) * std::pow(0.7, s) * std::pow(0.3, 4 - s);
        EXPECT_NEAR(rule[s], (0.3 * l1 + 0.7 * l2) / (l1 + l2), 1e-14);
    }
}

TEST(Trace, SizeOrderAndSymmetry) {
    const FiniteParamSpace space({0.3, 0.7});
    const auto trace = trace_lower_boundary(space, 10);
    ASSERT_EQ(trace.points.size(), kDefaultBoundaryGrid);
    for (std::size_t i = 0; i < trace.points.size(); ++i) {
        const auto& a = trace.points[i];
        const auto& b = trace.points[trace.points.size() - 1 - i];
        EXPECT_NEAR(a.risks[0].value(), b.risks[1].value(), 1e-12);
        if (i > 0) EXPECT_GT(a.prior_weight_first, trace.points[i - 1].prior_weight_first);
    }
    EXPECT_THROW(trace_lower_boundary(FiniteParamSpace({0.2, 0.5, 0.7}), 5), std::invalid_argument);
    EXPECT_THROW(trace_lower_boundary(space, 5, 2), std::invalid_argument);
}

TEST(Trace, BayesRulesLieOnBoundaryAndPluginDoesNot) {
    const FiniteParamSpace space({0.3, 0.7});
    const auto trace = trace_lower_boundary(space, 10);
    EXPECT_NEAR(boundary_gap(bayes_rule_for_prior(Prior::two_point(0.37), space, 10), trace).value(), 0.0, 1e-9);
    EXPECT_GT(boundary_gap(conjugate_rule(ConjugatePredictor::jeffreys(), 10), trace).value(), 0.0);
    EXPECT_TRUE(boundary_gap(plugin_rule(10), trace).is_infinite());
}

TEST(Trace, ShadowPriceMatchesPriorRatio) {
    const auto trace = trace_lower_boundary(FiniteParamSpace({0.3, 0.7}), 10);
    EXPECT_LT(shadow_price_residual(trace), 0.05);
}

TEST(Hyperplane, BayesRuleMinimisesWeightedRisk) {
    const FiniteParamSpace space({0.3, 0.7});
    Philox4x32 gen(1, 1);
    std::vector<PredictiveRule> candidates{plugin_rule(10)};
    for (int k = 0; k < 50; ++k) {
        std::vector<double> probs(11);
        for (auto& p : probs) p = uniform_open01(gen);
        candidates.emplace_back(10, probs);
    }
    const auto report = check_hyperplane_support(Prior::two_point(0.6), space, 10, candidates);
    EXPECT_LE(report.max_violation, 1e-10);
    EXPECT_EQ(report.slacks.size(), candidates.size());
    EXPECT_TRUE(std::isinf(report.slacks[0]));
}

TEST(Mixture, RiskIsLinearInLambda) {
    const auto a = conjugate_rule(ConjugatePredictor::jeffreys(), 7);
    const auto b = PredictiveRule::constant(7, 0.2);
    for (double lambda : {0.0, 0.3, 1.0}) {
        const double lhs = mixture_risk(a, b, lambda, 0.4).value();
        const double rhs = lambda * exact_risk(a, 0.4).value() + (1 - lambda) * exact_risk(b, 0.4).value();
        EXPECT_NEAR(lhs, rhs, 1e-12);
    }
    EXPECT_TRUE(mixture_risk(a, plugin_rule(7), 0.5, 0.4).is_infinite());
    EXPECT_FALSE(mixture_risk(a, plugin_rule(7), 1.0, 0.4).is_infinite());
}

TEST(Trace, CsvRows) {
    const auto trace = trace_lower_boundary(FiniteParamSpace({0.3, 0.7}), 3, 5);
    std::ostringstream os;
    write_trace_csv(os, trace);
    const std::string csv = os.str();
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    EXPECT_EQ(csv.rfind("boundary,0,", 0), 0u);
}
