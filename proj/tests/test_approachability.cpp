#include "admlab/approachability.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace admlab;

TEST(Defensive, PolicyAndLedger) {
    CalibrationLedger l;
    EXPECT_DOUBLE_EQ(defensive_predict(l), 0.5);
    l = ledger_update(l, 0.5, 1);
    EXPECT_DOUBLE_EQ(l.deficit, 0.5);
    EXPECT_DOUBLE_EQ(defensive_predict(l), 1.0);
    EXPECT_DOUBLE_EQ(l.deficit, l.sum_x - l.sum_p);
    EXPECT_THROW(ledger_update(l, 0.5, 2), std::invalid_argument);
    EXPECT_THROW(ledger_update(l, 1.5, 1), std::domain_error);
    EXPECT_THROW(calibration_error(CalibrationLedger{}), std::invalid_argument);
}

TEST(Defensive, DeficitBoundedOnEverySource) {
    std::vector<std::unique_ptr<SequenceSource>> suite;
    suite.push_back(make_iid_source(0.5, 1));
    suite.push_back(make_periodic_source({0, 0, 1}));
    suite.push_back(make_adaptive_adversary());
    suite.push_back(make_constant_source(1));
    suite.push_back(make_constant_source(0));
    for (auto& s : suite) {
        const auto curve = run_cesaro_experiment(*s, 10000);
        EXPECT_LE(curve.max_abs_deficit, 1.0) << curve.source;
        EXPECT_LE(curve.errors.back(), 1e-4) << curve.source;
        EXPECT_DOUBLE_EQ(curve.final_ledger.deficit, curve.final_ledger.sum_x - curve.final_ledger.sum_p);
    }
    auto constant = make_constant_source(1);
    EXPECT_LE(run_cesaro_experiment(*constant, 100).errors.back(), 0.01);
}

TEST(Defensive, SourcesValidate) {
    EXPECT_THROW(make_periodic_source({}), std::invalid_argument);
    EXPECT_THROW(make_periodic_source({0, 2}), std::invalid_argument);
    EXPECT_THROW(make_constant_source(3), std::invalid_argument);
    EXPECT_THROW(make_iid_source(1.0, 1), std::domain_error);
}

TEST(Witness, ShortestHistoryFirst) {
    const ConjugatePredictor grid[] = {{0.5, 0.5}, {1.0, 1.0}, {2.0, 2.0}};
    const auto w = non_bayes_witness(4, grid);
    ASSERT_TRUE(w.found);
    EXPECT_EQ(w.history, std::vector<int>{0});
    EXPECT_DOUBLE_EQ(w.defensive_prediction, 0.0);
    EXPECT_GT(w.gap, 1e-9);
    const auto none = non_bayes_witness(0, grid);
    EXPECT_FALSE(none.found);
    EXPECT_THROW(non_bayes_witness(4, std::span<const ConjugatePredictor>()), std::invalid_argument);
    EXPECT_DOUBLE_EQ(defensive_forecast_after(std::vector<int>{1}), 1.0);
}

TEST(Defensive, ExactRiskInfiniteAfterFirstRound) {
    EXPECT_FALSE(defensive_exact_risk(0, 0.3).is_infinite());
    EXPECT_TRUE(defensive_exact_risk(1, 0.3).is_infinite());
    EXPECT_TRUE(defensive_exact_risk(8, 0.6).is_infinite());
}

TEST(Defensive, NotAMartingaleUnderPriorPredictive) {
    // After x = 1 the forecast is 1; the next forecast is 1 or 0 with
    // predictive weights 3/4 and 1/4.
    EXPECT_GE(defensive_prior_predictive_deviation(2, ConjugatePredictor::jeffreys()), 0.25 - 1e-15);
}

TEST(Defensive, CurveCsvStride) {
    auto src = make_constant_source(0);
    const auto curve = run_cesaro_experiment(*src, 10);
    std::ostringstream os;
    write_error_curve_csv(os, curve, 4);
    EXPECT_EQ(os.str(), "constant0,4,0.125\nconstant0,8,0.0625\nconstant0,10,0.05\n");
}
