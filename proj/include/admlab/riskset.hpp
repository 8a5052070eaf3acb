#pragma once

#include "admlab/decision_core.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace admlab {

/// Bernoulli predictive rule indexed by the sufficient statistic: entry s is
/// the forecast P(X_{n+1} = 1) after s successes in n trials.
class PredictiveRule {
public:
    /// Requires probs.size() == n + 1 with every entry in [0,1].
    PredictiveRule(std::size_t n, std::vector<double> probs);

    /// Builds entries from fn(s, n) for s = 0..n.
    static PredictiveRule from_function(std::size_t n, const std::function<double(std::size_t, std::size_t)>& fn);
    static PredictiveRule constant(std::size_t n, double p);

    std::size_t n() const noexcept { return n_; }
    double operator[](std::size_t s) const { return probs_[s]; }
    std::span<const double> probs() const noexcept { return probs_; }

private:
    std::size_t n_;
    std::vector<double> probs_;
};

/// log C(n, s) + s ln theta + (n - s) ln(1 - theta).
double log_binomial_pmf(std::size_t s, std::size_t n, double theta);

/// E_theta[ log_loss(theta, rule[S_n]) ], S_n ~ Bin(n, theta), summed exactly
/// over s = 0..n.
RiskValue exact_risk(const PredictiveRule& rule, double theta);

RiskVector risk_vector(const PredictiveRule& rule, const FiniteParamSpace& space);

/// Risk of the randomized rule that follows `first` with probability lambda,
/// computed as the expectation of the per-s mixed loss.
RiskValue mixture_risk(const PredictiveRule& first, const PredictiveRule& second, double lambda, double theta);

/// Posterior-mean rule: the per-s minimizer of prior-weighted log loss.
/// A prior concentrated on one theta yields the constant rule at that theta.
PredictiveRule bayes_rule_for_prior(const Prior& prior, const FiniteParamSpace& space, std::size_t n);

struct BoundaryPoint {
    double prior_weight_first;  // prior mass on the smaller theta
    RiskVector risks;
};

struct BoundaryTrace {
    double theta_first;
    double theta_second;
    std::size_t n;
    std::vector<BoundaryPoint> points;  // prior_weight_first ascending
};

inline constexpr std::size_t kDefaultBoundaryGrid = 1001;

/// Bayes risk vectors over the evenly spaced prior grid w = i / (grid - 1).
/// Requires a two-point space and grid_size >= 3.
BoundaryTrace trace_lower_boundary(const FiniteParamSpace& space, std::size_t n,
                                   std::size_t grid_size = kDefaultBoundaryGrid, std::size_t threads = 0);

struct HyperplaneReport {
    RiskValue bayes_weighted_risk;
    /// max over candidates of max(0, <pi, r_bayes> - <pi, r_candidate>).
    double max_violation = 0.0;
    /// <pi, r_candidate> - <pi, r_bayes>, +inf when the candidate is infinite.
    std::vector<double> slacks;
};

HyperplaneReport check_hyperplane_support(const Prior& prior, const FiniteParamSpace& space, std::size_t n,
                                          std::span<const PredictiveRule> candidates);

/// min over traced priors of <pi, r(rule)> - <pi, r(bayes_pi)>, floored at 0.
RiskValue boundary_gap(const PredictiveRule& rule, const BoundaryTrace& trace);

/// Largest relative disagreement between the prior ratio pi_2 / pi_1 and the
/// negative reciprocal slope -dR_1/dR_2 of the trace, by central differences
/// over interior points with prior weight in [lo, hi].
double shadow_price_residual(const BoundaryTrace& trace, double lo = 0.05, double hi = 0.95);

/// CSV rows: label,prior_weight_1,risk_theta1,risk_theta2.
void write_trace_csv(std::ostream& os, const BoundaryTrace& trace);

}  // namespace admlab
