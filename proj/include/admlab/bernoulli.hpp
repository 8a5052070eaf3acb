#pragma once

#include "admlab/harness.hpp"
#include "admlab/riskset.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace admlab {

/// Beta(a, b) conjugate predictive (s + a) / (n + a + b).
struct ConjugatePredictor {
    double a = 0.5;
    double b = 0.5;

    /// Throws std::invalid_argument unless a > 0 and b > 0.
    ConjugatePredictor(double a_, double b_);

    static ConjugatePredictor jeffreys() { return {0.5, 0.5}; }
    static ConjugatePredictor laplace() { return {1.0, 1.0}; }
};

/// Throws std::invalid_argument when s > n.
double conjugate_predict(const ConjugatePredictor& pred, std::size_t s, std::size_t n);

/// s / n. Throws std::invalid_argument when n == 0 or s > n.
double plugin_predict(std::size_t s, std::size_t n);

PredictiveRule conjugate_rule(const ConjugatePredictor& pred, std::size_t n);
PredictiveRule plugin_rule(std::size_t n);

/// max over n <= n_max, s <= n of |E[p_{n+1} | s, n] - p_n| with X_{n+1}
/// drawn from the current predictive. Exact enumeration.
double bayes_martingale_deviation(const ConjugatePredictor& pred, std::size_t n_max);

/// max over 1 <= n < n_max, s <= n of |(s + s/n)/(n + 1) - s/n|.
double plugin_self_martingale_deviation(std::size_t n_max);

struct DominanceEntry {
    double theta;
    RiskValue plugin_risk;
    RiskValue bayes_risk;
    bool dominated;
};

struct DominanceCertificate {
    std::size_t n;
    bool all_dominated = true;
    std::vector<DominanceEntry> entries;
};

/// Plug-in vs Beta(1/2,1/2) Bayes exact risks at each theta.
DominanceCertificate dominance_certificate(std::size_t n, std::span<const double> theta_grid);

/// Integrated risk of `rule` under a Beta(prior.a, prior.b) prior on theta, in
/// closed form through Beta functions; +inf when some entry sits on {0,1}.
RiskValue beta_prior_integrated_risk(const PredictiveRule& rule, const ConjugatePredictor& prior);

/// theta^n + (1 - theta)^n.
double boundary_fraction_exact(std::size_t n, double theta);

struct Table2Row {
    std::size_t n;
    SummaryStat bayes_risk_mc;
    SummaryStat mle_risk_mc_clamped;
    double excess;  // mle - bayes, MC means
    SummaryStat boundary_fraction_mc;
    double bayes_risk_exact;
    RiskValue plugin_risk_exact;
    double boundary_fraction_exact;
};

/// Next-step expected log loss L(theta, p_n) for P1 and the clamped plug-in
/// over config.replications samples per n. Deterministic given the seed.
std::vector<Table2Row> run_table2(const ExperimentConfig& config);

void write_table2_csv(std::ostream& os, const ExperimentConfig& config, std::span<const Table2Row> rows);

}  // namespace admlab
