#pragma once

#include "admlab/bernoulli.hpp"
#include "admlab/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace admlab {

/// Running forecast/outcome sums of the defensive forecaster. All entries are
/// multiples of 1/2 under the sign policy, so deficit == sum_x - sum_p holds
/// exactly in floating point.
struct CalibrationLedger {
    std::size_t t = 0;
    double deficit = 0.0;
    double sum_p = 0.0;
    double sum_x = 0.0;
};

/// 1 if deficit > 0, 0 if deficit < 0, 1/2 at zero.
double defensive_predict(const CalibrationLedger& ledger) noexcept;

/// Throws std::invalid_argument unless p in [0,1] and x in {0,1}.
CalibrationLedger ledger_update(const CalibrationLedger& ledger, double p, int x);

/// |deficit| / t. Throws std::invalid_argument at t = 0.
double calibration_error(const CalibrationLedger& ledger);

/// Outcome stream that may look at the forecast it is about to face.
class SequenceSource {
public:
    virtual ~SequenceSource() = default;
    virtual std::string name() const = 0;
    virtual int next(double forecast) = 0;
};

std::unique_ptr<SequenceSource> make_iid_source(double theta, std::uint64_t seed);
/// Repeats `pattern` (entries 0/1) forever.
std::unique_ptr<SequenceSource> make_periodic_source(std::vector<int> pattern);
/// Plays the outcome the forecast rates least likely; 1 on a tie.
std::unique_ptr<SequenceSource> make_adaptive_adversary();
std::unique_ptr<SequenceSource> make_constant_source(int x);

struct ErrorCurve {
    std::string source;
    std::vector<double> errors;  // calibration_error after rounds 1..horizon
    double max_abs_deficit = 0.0;
    CalibrationLedger final_ledger;
};

/// Plays the defensive forecaster against `source` for `horizon` rounds.
ErrorCurve run_cesaro_experiment(SequenceSource& source, std::size_t horizon);

void write_error_curve_csv(std::ostream& os, const ErrorCurve& curve, std::size_t stride = 1);

struct WitnessReport {
    bool found = false;
    std::vector<int> history;
    double defensive_prediction = 0.0;
    double closest_conjugate_prediction = 0.0;
    double gap = 0.0;  // min over the grid of |defensive - conjugate|
};

/// Searches histories of length 0..horizon (shortest first, then
/// lexicographic) for one where the defensive forecast differs from every
/// conjugate predictive in the grid by more than `tolerance`.
/// Throws std::invalid_argument for an empty grid or horizon > 20.
WitnessReport non_bayes_witness(std::size_t horizon, std::span<const ConjugatePredictor> predictor_grid,
                                double tolerance = 1e-9);

/// Defensive forecast after replaying `history` from a fresh ledger.
double defensive_forecast_after(std::span<const int> history);

/// Exact next-step log-loss risk of the defensive forecaster after n iid
/// Bern(theta) outcomes, by enumeration of all 2^n histories (n <= 20).
RiskValue defensive_exact_risk(std::size_t n, double theta);

/// max over histories of length < depth of |E[p_{t+1} | history] - p_t| when
/// the next outcome follows the conjugate predictive `prior` (the prior
/// predictive measure of that Beta prior). Zero would mean martingale.
double defensive_prior_predictive_deviation(std::size_t depth, const ConjugatePredictor& prior);

}  // namespace admlab
