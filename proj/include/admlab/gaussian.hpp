#pragma once

#include "admlab/conformal.hpp"
#include "admlab/harness.hpp"

#include <json.hpp>

#include <cstddef>
#include <span>

namespace admlab {

/// X_i ~ N(mu, sigma^2) with known sigma; N(mu0, tau^2) prior for shrinkage
/// and mu0 as the null for the e-process.
struct GaussianModel {
    double sigma = 1.0;
    double mu0 = 0.0;
    double tau = 1.0;

    /// Throws std::invalid_argument unless sigma > 0 and tau > 0.
    GaussianModel(double sigma_, double mu0_, double tau_);
};

/// sigma^2 / n. Throws std::invalid_argument at n = 0.
double sample_mean_risk(const GaussianModel& model, std::size_t n);

/// w_n = n tau^2 / (n tau^2 + sigma^2); zero at n = 0.
double shrinkage_weight(const GaussianModel& model, std::size_t n);

/// w_n xbar + (1 - w_n) mu0.
double shrinkage_estimate(const GaussianModel& model, double xbar, std::size_t n);

/// w_n^2 sigma^2 / n + (1 - w_n)^2 (mu - mu0)^2.
double shrinkage_risk(const GaussianModel& model, double mu, std::size_t n);

/// |mu - mu0| beyond which shrinkage risk exceeds sigma^2 / n:
/// sqrt(sigma^2 (1 + w_n) / (n (1 - w_n))).
double shrinkage_crossing_distance(const GaussianModel& model, std::size_t n);

/// Gaussian twin of the Bernoulli e-process: factors f_{mu_hat}(x) / f_{mu0}(x)
/// with mu_hat the shrinkage estimate from the observations so far.
struct GaussianEProcessState {
    double log_value = 0.0;
    std::size_t t = 0;
    double sum_x = 0.0;

    double value() const noexcept;
    double plug_in_mean(const GaussianModel& model) const;
};

GaussianEProcessState gaussian_eprocess_update(const GaussianEProcessState& state, double x, const GaussianModel& model);

/// ln f_{mu_hat}(x) - ln f_{mu0}(x).
double gaussian_log_factor(double x, double plug_in_mean, const GaussianModel& model);

/// |E_{x ~ N(mu0, sigma^2)}[f_{mu_hat}(x) / f_{mu0}(x)] - 1| by adaptive
/// Gauss-Kronrod quadrature over mu0 +- 10 sigma, widened to cover mu_hat.
double gaussian_factor_expectation_deviation(double plug_in_mean, const GaussianModel& model);

/// Interval xbar +- q with q the split-conformal quantile of the residuals.
Interval gaussian_conformal_interval(std::span<const double> calibration_residuals, double xbar, double alpha);

struct GaussianLabConfig {
    std::uint64_t seed = 42;
    std::size_t n = 10;
    std::size_t risk_replications = 100000;
    std::size_t ville_replications = 10000;
    std::size_t ville_horizon = 100;
    std::size_t coverage_replications = 1000;
    std::size_t n_cal = 200;
    double alpha = 0.1;
    std::size_t threads = 0;
};

/// MC squared error of the sample mean at mu.
SummaryStat sample_mean_risk_mc(const GaussianModel& model, double mu, const GaussianLabConfig& config);

/// Fraction of null paths whose running e-process reaches 1/alpha_ville.
SummaryStat gaussian_ville_crossing_mc(const GaussianModel& model, double alpha_ville, const GaussianLabConfig& config);

/// Coverage of xbar +- q for a fresh observation when residuals
/// |X_j - xbar| come from an exchangeable calibration split.
SummaryStat gaussian_conformal_coverage_mc(const GaussianModel& model, double mu, const GaussianLabConfig& config);

/// The three-part separation report as JSON: named boolean checks with their
/// measured values and thresholds.
nlohmann::ordered_json separation_report(const GaussianModel& model, const GaussianLabConfig& config);

}  // namespace admlab
