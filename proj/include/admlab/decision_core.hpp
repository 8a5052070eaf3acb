#pragma once

#include "admlab/risk_value.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace admlab {

/// Ordered, strictly increasing list of parameter values.
class FiniteParamSpace {
public:
    enum class Kind { bernoulli, real_line };

    /// Bernoulli spaces require every theta strictly inside (0,1).
    explicit FiniteParamSpace(std::vector<double> thetas, Kind kind = Kind::bernoulli);

    std::size_t size() const noexcept { return thetas_.size(); }
    double operator[](std::size_t j) const { return thetas_[j]; }
    std::span<const double> thetas() const noexcept { return thetas_; }
    Kind kind() const noexcept { return kind_; }

private:
    std::vector<double> thetas_;
    Kind kind_;
};

/// Per-parameter risk profile: one extended-real risk per theta.
using RiskVector = std::vector<RiskValue>;

/// Probability weights over a FiniteParamSpace.
class Prior {
public:
    /// Weights must be >= 0 and sum to 1 within 1e-12.
    explicit Prior(std::vector<double> weights);

    static Prior uniform(std::size_t k);
    /// Two-point prior (w, 1 - w).
    static Prior two_point(double weight_first);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t j) const { return weights_[j]; }
    std::span<const double> weights() const noexcept { return weights_; }

private:
    std::vector<double> weights_;
};

/// Throws std::domain_error unless 0 < theta < 1.
void require_open_probability(double theta, const char* what);
/// Throws std::domain_error unless 0 <= p <= 1.
void require_closed_probability(double p, const char* what);

/// Log loss -theta ln p - (1-theta) ln(1-p), in nats. Infinite exactly when
/// the forecast puts zero mass on an outcome of positive probability.
RiskValue log_loss(double theta, double p);

/// -theta ln theta - (1-theta) ln(1-theta).
double binary_entropy(double theta);

/// KL(Bern(theta) || Bern(p)) = log_loss(theta, p) - binary_entropy(theta).
RiskValue kl_excess(double theta, double p);

/// Squared loss (mu - a)^2.
inline double squared_loss(double mu, double a) { return (mu - a) * (mu - a); }

/// a <= b coordinatewise with at least one strict coordinate. +inf equals
/// +inf. Throws std::invalid_argument on length mismatch.
bool dominates(std::span<const RiskValue> a, std::span<const RiskValue> b);

/// sum_j w_j r_j with 0 * inf = 0.
RiskValue weighted_risk(const Prior& prior, std::span<const RiskValue> risks);

}  // namespace admlab
