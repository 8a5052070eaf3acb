#include "admlab/decision_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace admlab {

FiniteParamSpace::FiniteParamSpace(std::vector<double> thetas, Kind kind)
    : thetas_(std::move(thetas)), kind_(kind) {
    if (thetas_.empty()) throw std::invalid_argument("FiniteParamSpace: empty parameter list");
    for (std::size_t j = 0; j < thetas_.size(); ++j) {
        if (!std::isfinite(thetas_[j])) {
            throw std::invalid_argument("FiniteParamSpace: non-finite parameter");
        }
        if (kind_ == Kind::bernoulli) require_open_probability(thetas_[j], "FiniteParamSpace");
        if (j > 0 && !(thetas_[j] > thetas_[j - 1])) {
            throw std::invalid_argument("FiniteParamSpace: parameters must be strictly increasing");
        }
    }
}

Prior::Prior(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("Prior: empty weight list");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("Prior: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("Prior: weights must sum to 1");
}

Prior Prior::uniform(std::size_t k) {
    if (k == 0) throw std::invalid_argument("Prior::uniform: k must be positive");
    return Prior(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Prior Prior::two_point(double weight_first) {
    if (!(weight_first >= 0.0 && weight_first <= 1.0)) {
        throw std::invalid_argument("Prior::two_point: weight outside [0,1]");
    }
    return Prior({weight_first, 1.0 - weight_first});
}

void require_open_probability(double theta, const char* what) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::domain_error(std::string(what) + ": probability must lie in (0,1)");
    }
}

void require_closed_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error(std::string(what) + ": probability must lie in [0,1]");
    }
}

RiskValue log_loss(double theta, double p) {
    require_open_probability(theta, "log_loss");
    require_closed_probability(p, "log_loss");
    if (p == 0.0 || p == 1.0) return RiskValue::infinity();
    return RiskValue::finite(-theta * std::log(p) - (1.0 - theta) * std::log1p(-p));
}

double binary_entropy(double theta) {
    require_open_probability(theta, "binary_entropy");
    return -theta * std::log(theta) - (1.0 - theta) * std::log1p(-theta);
}

RiskValue kl_excess(double theta, double p) {
    require_open_probability(theta, "kl_excess");
    require_closed_probability(p, "kl_excess");
    if (p == 0.0 || p == 1.0) return RiskValue::infinity();
    // Direct KL form; rounding can leave -1e-17 residue at p == theta.
    const double kl = theta * std::log(theta / p) + (1.0 - theta) * std::log((1.0 - theta) / (1.0 - p));
    return RiskValue::finite(std::max(kl, 0.0));
}

bool dominates(std::span<const RiskValue> a, std::span<const RiskValue> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: risk vectors differ in length");
    bool strict = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) return false;
        if (a[j] < b[j]) strict = true;
    }
    return strict;
}

RiskValue weighted_risk(const Prior& prior, std::span<const RiskValue> risks) {
    if (prior.size() != risks.size()) throw std::invalid_argument("weighted_risk: size mismatch");
    RiskValue total;
    for (std::size_t j = 0; j < risks.size(); ++j) total += scale(prior[j], risks[j]);
    return total;
}

}  // namespace admlab
