#pragma once

#include "admlab/bernoulli.hpp"
#include "admlab/harness.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace admlab {

/// Likelihood-ratio e-process for H0: theta = theta0 with a conjugate
/// predictive as the plug-in alternative. The running product is held in
/// log space; value() exponentiates it.
class EProcessState {
public:
    /// Throws std::domain_error unless 0 < theta0 < 1.
    explicit EProcessState(double theta0, ConjugatePredictor predictor = ConjugatePredictor::jeffreys());

    double value() const noexcept;
    double log_value() const noexcept { return log_value_; }
    std::size_t t() const noexcept { return t_; }
    std::size_t successes() const noexcept { return s_; }
    double theta0() const noexcept { return theta0_; }
    const ConjugatePredictor& predictor() const noexcept { return predictor_; }

    /// Forecast for the next outcome, p_{t}.
    double next_prediction() const;

    /// New state after observing x in {0,1}. Throws std::invalid_argument for
    /// any other x.
    [[nodiscard]] EProcessState update(int x) const;

    /// ln E_t rebuilt from (s, t) alone through the Beta-Binomial marginal
    /// likelihood; used to audit the running product.
    double audit_log_value() const;

private:
    double theta0_;
    ConjugatePredictor predictor_;
    double log_value_ = 0.0;
    std::size_t t_ = 0;
    std::size_t s_ = 0;
};

inline EProcessState eprocess_update(const EProcessState& state, int x) { return state.update(x); }

/// max over the (s, t) lattice to `depth` of
/// |theta0 * f1 + (1 - theta0) * f0 - 1| for the one-step factors f1, f0.
double eprocess_martingale_deviation(double theta0, std::size_t depth,
                                     ConjugatePredictor predictor = ConjugatePredictor::jeffreys());

/// value >= 1/alpha. Throws std::domain_error unless 0 < alpha < 1.
bool ville_reject(double value, double alpha);
bool ville_reject(const EProcessState& state, double alpha);

/// Two-sided z-test of theta = 1/2 at each look with critical value 1.96 and
/// no multiplicity correction; true when any look rejects.
bool naive_peeking_test(std::span<const int> xs, std::span<const std::size_t> looks, double alpha = 0.05);

struct Table3Report {
    SummaryStat eprocess_rejection;
    SummaryStat naive_rejection;
};

/// Type-I error of both strategies under H0: theta = config.theta.
Table3Report run_table3(const ExperimentConfig& config);

void write_table3_csv(std::ostream& os, const ExperimentConfig& config, const Table3Report& report);

/// One simulated path under the null: rows (t, E_t).
std::vector<double> eprocess_path(const ExperimentConfig& config, std::size_t replication);

}  // namespace admlab
