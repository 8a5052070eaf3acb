#include "admlab/riskset.hpp"

#include "admlab/harness.hpp"
#include "admlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace admlab {

PredictiveRule::PredictiveRule(std::size_t n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
    if (probs_.size() != n_ + 1) throw std::invalid_argument("PredictiveRule: need exactly n + 1 entries");
    for (double p : probs_) require_closed_probability(p, "PredictiveRule");
}

PredictiveRule PredictiveRule::from_function(std::size_t n,
                                             const std::function<double(std::size_t, std::size_t)>& fn) {
    std::vector<double> probs(n + 1);
    for (std::size_t s = 0; s <= n; ++s) probs[s] = fn(s, n);
    return PredictiveRule(n, std::move(probs));
}

PredictiveRule PredictiveRule::constant(std::size_t n, double p) {
    return PredictiveRule(n, std::vector<double>(n + 1, p));
}

double log_binomial_pmf(std::size_t s, std::size_t n, double theta) {
    const double ns = static_cast<double>(n);
    const double ss = static_cast<double>(s);
    const double log_choose = std::lgamma(ns + 1.0) - std::lgamma(ss + 1.0) - std::lgamma(ns - ss + 1.0);
    return log_choose + ss * std::log(theta) + (ns - ss) * std::log1p(-theta);
}

RiskValue exact_risk(const PredictiveRule& rule, double theta) {
    require_open_probability(theta, "exact_risk");
    const std::size_t n = rule.n();
    std::vector<double> terms(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        const RiskValue loss = log_loss(theta, rule[s]);
        // Every binomial weight is positive for theta in (0,1).
        if (loss.is_infinite()) return RiskValue::infinity();
        terms[s] = std::exp(log_binomial_pmf(s, n, theta)) * loss.value();
    }
    return RiskValue::finite(pairwise_sum(terms));
}

RiskVector risk_vector(const PredictiveRule& rule, const FiniteParamSpace& space) {
    RiskVector out;
    out.reserve(space.size());
    for (double theta : space.thetas()) out.push_back(exact_risk(rule, theta));
    return out;
}

RiskValue mixture_risk(const PredictiveRule& first, const PredictiveRule& second, double lambda, double theta) {
    if (first.n() != second.n()) throw std::invalid_argument("mixture_risk: rules differ in n");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("mixture_risk: lambda outside [0,1]");
    const std::size_t n = first.n();
    RiskValue total;
    for (std::size_t s = 0; s <= n; ++s) {
        const double w = std::exp(log_binomial_pmf(s, n, theta));
        const RiskValue mixed = scale(lambda, log_loss(theta, first[s])) + scale(1.0 - lambda, log_loss(theta, second[s]));
        total += scale(w, mixed);
    }
    return total;
}

PredictiveRule bayes_rule_for_prior(const Prior& prior, const FiniteParamSpace& space, std::size_t n) {
    if (prior.size() != space.size()) throw std::invalid_argument("bayes_rule_for_prior: prior/space size mismatch");
    if (space.kind() != FiniteParamSpace::Kind::bernoulli) {
        throw std::invalid_argument("bayes_rule_for_prior: Bernoulli parameter space required");
    }
    std::vector<double> probs(n + 1);
    std::vector<double> log_w(space.size());
    for (std::size_t s = 0; s <= n; ++s) {
        // Posterior weights pi_j theta_j^s (1 - theta_j)^(n - s); C(n, s) cancels.
        double max_log = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < space.size(); ++j) {
            if (prior[j] == 0.0) {
                log_w[j] = -std::numeric_limits<double>::infinity();
                continue;
            }
            const double theta = space[j];
            log_w[j] = std::log(prior[j]) + static_cast<double>(s) * std::log(theta) +
                       static_cast<double>(n - s) * std::log1p(-theta);
            max_log = std::max(max_log, log_w[j]);
        }
        double num = 0.0;
        double den = 0.0;
        for (std::size_t j = 0; j < space.size(); ++j) {
            if (prior[j] == 0.0) continue;
            const double w = std::exp(log_w[j] - max_log);
            num += w * space[j];
            den += w;
        }
        probs[s] = num / den;
    }
    return PredictiveRule(n, std::move(probs));
}

BoundaryTrace trace_lower_boundary(const FiniteParamSpace& space, std::size_t n, std::size_t grid_size,
                                   std::size_t threads) {
    if (space.size() != 2) throw std::invalid_argument("trace_lower_boundary: two-point parameter space required");
    if (grid_size < 3) throw std::invalid_argument("trace_lower_boundary: grid_size must be >= 3");
    BoundaryTrace trace{space[0], space[1], n, {}};
    const double denom = static_cast<double>(grid_size - 1);
    trace.points = parallel_map(grid_size, threads, [&](std::size_t i) {
        const double w = static_cast<double>(i) / denom;
        const Prior prior = Prior::two_point(w);
        return BoundaryPoint{w, risk_vector(bayes_rule_for_prior(prior, space, n), space)};
    });
    return trace;
}

HyperplaneReport check_hyperplane_support(const Prior& prior, const FiniteParamSpace& space, std::size_t n,
                                          std::span<const PredictiveRule> candidates) {
    HyperplaneReport report;
    const RiskVector bayes = risk_vector(bayes_rule_for_prior(prior, space, n), space);
    report.bayes_weighted_risk = weighted_risk(prior, bayes);
    if (report.bayes_weighted_risk.is_infinite()) {
        throw std::logic_error("check_hyperplane_support: Bayes rule has infinite weighted risk");
    }
    const double base = report.bayes_weighted_risk.value();
    for (const auto& candidate : candidates) {
        if (candidate.n() != n) throw std::invalid_argument("check_hyperplane_support: candidate has wrong n");
        const RiskValue r = weighted_risk(prior, risk_vector(candidate, space));
        const double slack = r.is_infinite() ? std::numeric_limits<double>::infinity() : r.value() - base;
        report.slacks.push_back(slack);
        report.max_violation = std::max(report.max_violation, -slack);
    }
    return report;
}

RiskValue boundary_gap(const PredictiveRule& rule, const BoundaryTrace& trace) {
    if (rule.n() != trace.n) throw std::invalid_argument("boundary_gap: rule and trace differ in n");
    const FiniteParamSpace space({trace.theta_first, trace.theta_second});
    const RiskVector r = risk_vector(rule, space);
    RiskValue best = RiskValue::infinity();
    for (const auto& point : trace.points) {
        const Prior prior = Prior::two_point(point.prior_weight_first);
        const RiskValue mine = weighted_risk(prior, r);
        if (mine.is_infinite()) continue;
        const double bayes = weighted_risk(prior, point.risks).value();
        best = std::min(best, RiskValue::finite(std::max(0.0, mine.value() - bayes)));
    }
    return best;
}

double shadow_price_residual(const BoundaryTrace& trace, double lo, double hi) {
    double worst = 0.0;
    const auto& pts = trace.points;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double w = pts[i].prior_weight_first;
        if (w < lo || w > hi) continue;
        const double d1 = pts[i + 1].risks[0].value() - pts[i - 1].risks[0].value();
        const double d2 = pts[i + 1].risks[1].value() - pts[i - 1].risks[1].value();
        const double multiplier_fd = -d1 / d2;
        const double multiplier_prior = (1.0 - w) / w;
        worst = std::max(worst, std::abs(multiplier_fd - multiplier_prior) / multiplier_prior);
    }
    return worst;
}

void write_trace_csv(std::ostream& os, const BoundaryTrace& trace) {
    for (const auto& p : trace.points) {
        os << "boundary," << format_number(p.prior_weight_first) << ',' << format_risk(p.risks[0]) << ','
           << format_risk(p.risks[1]) << '\n';
    }
}

}  // namespace admlab
