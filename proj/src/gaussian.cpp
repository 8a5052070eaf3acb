#include "admlab/gaussian.hpp"

#include "admlab/decision_core.hpp"
#include "admlab/report.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace admlab {

GaussianModel::GaussianModel(double sigma_, double mu0_, double tau_) : sigma(sigma_), mu0(mu0_), tau(tau_) {
    if (!(sigma > 0.0) || !(tau > 0.0) || !std::isfinite(sigma) || !std::isfinite(tau) || !std::isfinite(mu0)) {
        throw std::invalid_argument("GaussianModel: sigma and tau must be positive and finite");
    }
}

double sample_mean_risk(const GaussianModel& model, std::size_t n) {
    if (n < 1) throw std::invalid_argument("sample_mean_risk: n must be >= 1");
    return model.sigma * model.sigma / static_cast<double>(n);
}

double shrinkage_weight(const GaussianModel& model, std::size_t n) {
    const double nt = static_cast<double>(n) * model.tau * model.tau;
    return nt / (nt + model.sigma * model.sigma);
}

double shrinkage_estimate(const GaussianModel& model, double xbar, std::size_t n) {
    if (n < 1) throw std::invalid_argument("shrinkage_estimate: n must be >= 1");
    const double w = shrinkage_weight(model, n);
    return w * xbar + (1.0 - w) * model.mu0;
}

double shrinkage_risk(const GaussianModel& model, double mu, std::size_t n) {
    if (n < 1) throw std::invalid_argument("shrinkage_risk: n must be >= 1");
    const double w = shrinkage_weight(model, n);
    const double bias = (1.0 - w) * (mu - model.mu0);
    return w * w * model.sigma * model.sigma / static_cast<double>(n) + bias * bias;
}

double shrinkage_crossing_distance(const GaussianModel& model, std::size_t n) {
    if (n < 1) throw std::invalid_argument("shrinkage_crossing_distance: n must be >= 1");
    const double w = shrinkage_weight(model, n);
    return std::sqrt(model.sigma * model.sigma * (1.0 + w) / (static_cast<double>(n) * (1.0 - w)));
}

double GaussianEProcessState::value() const noexcept { return std::exp(log_value); }

double GaussianEProcessState::plug_in_mean(const GaussianModel& model) const {
    if (t == 0) return model.mu0;
    return shrinkage_estimate(model, sum_x / static_cast<double>(t), t);
}

double gaussian_log_factor(double x, double plug_in_mean, const GaussianModel& model) {
    const double d0 = x - model.mu0;
    const double d1 = x - plug_in_mean;
    return (d0 * d0 - d1 * d1) / (2.0 * model.sigma * model.sigma);
}

GaussianEProcessState gaussian_eprocess_update(const GaussianEProcessState& state, double x, const GaussianModel& model) {
    if (!std::isfinite(x)) throw std::invalid_argument("gaussian_eprocess_update: non-finite observation");
    GaussianEProcessState next = state;
    next.log_value += gaussian_log_factor(x, state.plug_in_mean(model), model);
    next.t += 1;
    next.sum_x += x;
    return next;
}

double gaussian_factor_expectation_deviation(double plug_in_mean, const GaussianModel& model) {
    const double sigma = model.sigma;
    const double inv_norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    auto integrand = [&](double x) {
        const double z = (x - model.mu0) / sigma;
        return inv_norm * std::exp(-0.5 * z * z + gaussian_log_factor(x, plug_in_mean, model));
    };
    const double lo = std::min(model.mu0, plug_in_mean) - 10.0 * sigma;
    const double hi = std::max(model.mu0, plug_in_mean) + 10.0 * sigma;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 15, 1e-14);
    return std::abs(integral - 1.0);
}

Interval gaussian_conformal_interval(std::span<const double> calibration_residuals, double xbar, double alpha) {
    const ConformalCalibration calib = calibrate(calibration_residuals, alpha);
    return {xbar - calib.quantile, xbar + calib.quantile};
}

namespace {

// Separate key per experiment so that streams never collide across checks.
std::uint64_t experiment_key(std::uint64_t seed, std::uint64_t tag) { return seed ^ (0x9E3779B97F4A7C15ull * (tag + 1)); }

}  // namespace

SummaryStat sample_mean_risk_mc(const GaussianModel& model, double mu, const GaussianLabConfig& config) {
    if (config.n < 1 || config.risk_replications < 2) throw std::invalid_argument("sample_mean_risk_mc: bad config");
    const std::uint64_t key = experiment_key(config.seed, 1000 + static_cast<std::uint64_t>(std::llround(mu * 1000.0) + 1000000));
    const auto errors = parallel_map(config.risk_replications, config.threads, [&](std::size_t rep) {
        Philox4x32 gen(key, rep);
        StandardNormal normal;
        double sum = 0.0;
        for (std::size_t i = 0; i < config.n; ++i) sum += mu + model.sigma * normal(gen);
        return squared_loss(mu, sum / static_cast<double>(config.n));
    });
    return summarize(std::span<const double>(errors));
}

SummaryStat gaussian_ville_crossing_mc(const GaussianModel& model, double alpha_ville, const GaussianLabConfig& config) {
    const std::uint64_t key = experiment_key(config.seed, 2);
    const double log_threshold = -std::log(alpha_ville);
    const auto crossed = parallel_map(config.ville_replications, config.threads, [&](std::size_t rep) {
        Philox4x32 gen(key, rep);
        StandardNormal normal;
        GaussianEProcessState state;
        for (std::size_t t = 0; t < config.ville_horizon; ++t) {
            state = gaussian_eprocess_update(state, model.mu0 + model.sigma * normal(gen), model);
            if (state.log_value >= log_threshold) return 1.0;
        }
        return 0.0;
    });
    return summarize(std::span<const double>(crossed));
}

SummaryStat gaussian_conformal_coverage_mc(const GaussianModel& model, double mu, const GaussianLabConfig& config) {
    const std::uint64_t key = experiment_key(config.seed, 3);
    constexpr std::size_t kTestPoints = 100;
    const auto coverage = parallel_map(config.coverage_replications, config.threads, [&](std::size_t rep) {
        Philox4x32 gen(key, rep);
        StandardNormal normal;
        double sum = 0.0;
        for (std::size_t i = 0; i < config.n; ++i) sum += mu + model.sigma * normal(gen);
        const double xbar = sum / static_cast<double>(config.n);
        std::vector<double> residuals(config.n_cal);
        for (auto& r : residuals) r = std::abs(mu + model.sigma * normal(gen) - xbar);
        const Interval interval = gaussian_conformal_interval(residuals, xbar, config.alpha);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < kTestPoints; ++i) {
            if (interval.contains(mu + model.sigma * normal(gen))) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(kTestPoints);
    });
    return summarize(std::span<const double>(coverage));
}

nlohmann::ordered_json separation_report(const GaussianModel& model, const GaussianLabConfig& config) {
    using nlohmann::ordered_json;
    const std::size_t n = config.n;
    const double flat = sample_mean_risk(model, n);

    // (i) sample mean: constant risk over a mu grid.
    ordered_json risk_rows = ordered_json::array();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double lo_se = 0.0;
    double hi_se = 0.0;
    bool each_within = true;
    for (int k = -3; k <= 3; ++k) {
        const double mu = model.mu0 + static_cast<double>(k);
        const SummaryStat s = sample_mean_risk_mc(model, mu, config);
        const bool within = std::abs(s.mean - flat) <= 3.0 * s.mc_standard_error;
        each_within = each_within && within;
        if (s.mean < lo) { lo = s.mean; lo_se = s.mc_standard_error; }
        if (s.mean > hi) { hi = s.mean; hi_se = s.mc_standard_error; }
        risk_rows.push_back({{"mu", mu}, {"mc_risk", s.mean}, {"mc_se", s.mc_standard_error}, {"within_3se", within}});
    }
    const double range_tol = 3.0 * std::hypot(lo_se, hi_se);
    const bool constant = each_within && (hi - lo) <= range_tol;

    // (ii) e-process: unit-expectation factors, Ville bound, and no
    // squared-loss optimality of its plug-in estimate.
    double worst_quadrature = 0.0;
    for (double offset : {0.0, 0.25, -0.5, 1.0, -2.0, 3.0}) {
        worst_quadrature = std::max(worst_quadrature,
                                    gaussian_factor_expectation_deviation(model.mu0 + offset * model.sigma, model));
    }
    const double alpha_ville = 0.05;
    const SummaryStat ville = gaussian_ville_crossing_mc(model, alpha_ville, config);
    const double crossing = shrinkage_crossing_distance(model, n);
    const double far_mu = model.mu0 + 2.0 * crossing;
    const double plug_in_far_risk = shrinkage_risk(model, far_mu, n);
    const bool martingale = worst_quadrature <= 1e-8;
    const bool ville_ok = ville.mean <= alpha_ville;
    const bool plug_in_dominated_somewhere = plug_in_far_risk > flat;

    // (iii) conformal interval: covers, is set-valued, and its center is
    // beaten at the prior center by the Bayes shrinkage estimate.
    const SummaryStat cover = gaussian_conformal_coverage_mc(model, model.mu0, config);
    const double cover_floor = 1.0 - config.alpha - 3.0 * cover.mc_standard_error;
    const bool covers = cover.mean >= cover_floor;
    const double center_gain = flat - shrinkage_risk(model, model.mu0, n);
    const bool center_not_optimal = center_gain > 0.0;

    ordered_json report;
    report["model"] = {{"sigma", model.sigma}, {"mu0", model.mu0}, {"tau", model.tau}, {"n", n}};
    report["config"] = {{"seed", config.seed},
                        {"risk_reps", config.risk_replications},
                        {"ville_reps", config.ville_replications},
                        {"ville_horizon", config.ville_horizon},
                        {"coverage_reps", config.coverage_replications},
                        {"n_cal", config.n_cal},
                        {"alpha", config.alpha}};
    report["sample_mean_blackwell"] = {
        {"pass", constant},
        {"exact_risk", flat},
        {"mc_range", hi - lo},
        {"range_tolerance", range_tol},
        {"per_mu", risk_rows},
        {"note", "point estimator: produces neither an e-process nor a prediction set"}};
    report["eprocess_anytime_valid"] = {
        {"pass", martingale && ville_ok && plug_in_dominated_somewhere},
        {"max_factor_expectation_deviation", worst_quadrature},
        {"deviation_tolerance", 1e-8},
        {"ville_crossing_rate", ville.mean},
        {"ville_crossing_se", ville.mc_standard_error},
        {"ville_alpha", alpha_ville},
        {"plug_in_risk_at_far_mu", plug_in_far_risk},
        {"far_mu", far_mu},
        {"crossing_distance", crossing},
        {"sample_mean_risk", flat}};
    report["conformal_coverage"] = {
        {"pass", covers && center_not_optimal},
        {"coverage", cover.mean},
        {"coverage_se", cover.mc_standard_error},
        {"coverage_floor", cover_floor},
        {"center_risk_minus_bayes_at_mu0", center_gain},
        {"note", "set-valued output: not a point estimate and not an e-process"}};
    report["all_pass"] = constant && martingale && ville_ok && plug_in_dominated_somewhere && covers && center_not_optimal;
    return report;
}

}  // namespace admlab
