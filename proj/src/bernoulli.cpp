#include "admlab/bernoulli.hpp"

#include "admlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace admlab {

ConjugatePredictor::ConjugatePredictor(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("ConjugatePredictor: a and b must be positive");
    }
}

double conjugate_predict(const ConjugatePredictor& pred, std::size_t s, std::size_t n) {
    if (s > n) throw std::invalid_argument("conjugate_predict: s exceeds n");
    return (static_cast<double>(s) + pred.a) / (static_cast<double>(n) + pred.a + pred.b);
}

double plugin_predict(std::size_t s, std::size_t n) {
    if (n == 0) throw std::invalid_argument("plugin_predict: undefined at n = 0");
    if (s > n) throw std::invalid_argument("plugin_predict: s exceeds n");
    return static_cast<double>(s) / static_cast<double>(n);
}

PredictiveRule conjugate_rule(const ConjugatePredictor& pred, std::size_t n) {
    return PredictiveRule::from_function(n, [&](std::size_t s, std::size_t m) { return conjugate_predict(pred, s, m); });
}

PredictiveRule plugin_rule(std::size_t n) {
    return PredictiveRule::from_function(n, [](std::size_t s, std::size_t m) { return plugin_predict(s, m); });
}

double bayes_martingale_deviation(const ConjugatePredictor& pred, std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("bayes_martingale_deviation: n_max must be >= 1");
    double worst = 0.0;
    for (std::size_t n = 0; n < n_max; ++n) {
        for (std::size_t s = 0; s <= n; ++s) {
            const double p = conjugate_predict(pred, s, n);
            const double next = p * conjugate_predict(pred, s + 1, n + 1) + (1.0 - p) * conjugate_predict(pred, s, n + 1);
            worst = std::max(worst, std::abs(next - p));
        }
    }
    return worst;
}

double plugin_self_martingale_deviation(std::size_t n_max) {
    if (n_max < 2) throw std::invalid_argument("plugin_self_martingale_deviation: n_max must be >= 2");
    double worst = 0.0;
    for (std::size_t n = 1; n < n_max; ++n) {
        for (std::size_t s = 0; s <= n; ++s) {
            const double p = plugin_predict(s, n);
            const double next = p * plugin_predict(s + 1, n + 1) + (1.0 - p) * plugin_predict(s, n + 1);
            worst = std::max(worst, std::abs(next - p));
        }
    }
    return worst;
}

DominanceCertificate dominance_certificate(std::size_t n, std::span<const double> theta_grid) {
    DominanceCertificate cert{n, true, {}};
    const PredictiveRule plugin = plugin_rule(n);
    const PredictiveRule bayes = conjugate_rule(ConjugatePredictor::jeffreys(), n);
    for (double theta : theta_grid) {
        DominanceEntry e{theta, exact_risk(plugin, theta), exact_risk(bayes, theta), false};
        e.dominated = e.bayes_risk < e.plugin_risk;
        cert.all_dominated = cert.all_dominated && e.dominated;
        cert.entries.push_back(e);
    }
    return cert;
}

RiskValue beta_prior_integrated_risk(const PredictiveRule& rule, const ConjugatePredictor& prior) {
    const std::size_t n = rule.n();
    const double a = prior.a;
    const double b = prior.b;
    auto log_beta = [](double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); };
    const double log_norm = log_beta(a, b);
    std::vector<double> terms(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        const double p = rule[s];
        if (p == 0.0 || p == 1.0) return RiskValue::infinity();
        const double ss = static_cast<double>(s);
        const double ff = static_cast<double>(n - s);
        const double log_choose =
            std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(ss + 1.0) - std::lgamma(ff + 1.0);
        // E[C(n,s) theta^s (1-theta)^(n-s) * theta] and the (1 - theta) analogue.
        const double w1 = std::exp(log_choose + log_beta(ss + a + 1.0, ff + b) - log_norm);
        const double w0 = std::exp(log_choose + log_beta(ss + a, ff + b + 1.0) - log_norm);
        terms[s] = -w1 * std::log(p) - w0 * std::log1p(-p);
    }
    return RiskValue::finite(pairwise_sum(terms));
}

double boundary_fraction_exact(std::size_t n, double theta) {
    require_open_probability(theta, "boundary_fraction_exact");
    if (n < 1) throw std::invalid_argument("boundary_fraction_exact: n must be >= 1");
    if (n == 1) return 1.0;
    const double k = static_cast<double>(n);
    return std::pow(theta, k) + std::pow(1.0 - theta, k);
}

std::vector<Table2Row> run_table2(const ExperimentConfig& config) {
    config.validate();
    const double theta = config.theta;
    const double eps = config.clamp_epsilon;
    const auto jeffreys = ConjugatePredictor::jeffreys();

    struct Draw {
        std::vector<double> bayes, mle, boundary;
    };
    const auto draws = parallel_map(config.replications, config.threads, [&](std::size_t rep) {
        Philox4x32 gen = derive_substream(config.seed, rep);
        Draw d;
        for (std::size_t n : config.sample_sizes) {
            std::size_t s = 0;
            for (std::size_t i = 0; i < n; ++i) s += static_cast<std::size_t>(bernoulli_draw(gen, theta));
            d.bayes.push_back(log_loss(theta, conjugate_predict(jeffreys, s, n)).value());
            const double clamped = std::clamp(plugin_predict(s, n), eps, 1.0 - eps);
            d.mle.push_back(log_loss(theta, clamped).value());
            d.boundary.push_back((s == 0 || s == n) ? 1.0 : 0.0);
        }
        return d;
    });

    std::vector<Table2Row> rows;
    std::vector<double> bayes(config.replications), mle(config.replications), boundary(config.replications);
    for (std::size_t k = 0; k < config.sample_sizes.size(); ++k) {
        const std::size_t n = config.sample_sizes[k];
        for (std::size_t r = 0; r < config.replications; ++r) {
            bayes[r] = draws[r].bayes[k];
            mle[r] = draws[r].mle[k];
            boundary[r] = draws[r].boundary[k];
        }
        Table2Row row;
        row.n = n;
        row.bayes_risk_mc = summarize(std::span<const double>(bayes));
        row.mle_risk_mc_clamped = summarize(std::span<const double>(mle));
        row.excess = row.mle_risk_mc_clamped.mean - row.bayes_risk_mc.mean;
        row.boundary_fraction_mc = summarize(std::span<const double>(boundary));
        row.bayes_risk_exact = exact_risk(conjugate_rule(jeffreys, n), theta).value();
        row.plugin_risk_exact = exact_risk(plugin_rule(n), theta);
        row.boundary_fraction_exact = boundary_fraction_exact(n, theta);
        rows.push_back(row);
    }
    return rows;
}

void write_table2_csv(std::ostream& os, const ExperimentConfig& config, std::span<const Table2Row> rows) {
    os << "# table2 " << config.to_string() << '\n';
    os << "n,bayes_risk_mc,bayes_risk_se,mle_risk_mc_clamped,mle_risk_se,excess,boundary_fraction_mc,"
          "boundary_fraction_se,bayes_risk_exact,plugin_risk_exact,boundary_fraction_exact\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_number(r.bayes_risk_mc.mean) << ',' << format_number(r.bayes_risk_mc.mc_standard_error)
           << ',' << format_number(r.mle_risk_mc_clamped.mean) << ','
           << format_number(r.mle_risk_mc_clamped.mc_standard_error) << ',' << format_number(r.excess) << ','
           << format_number(r.boundary_fraction_mc.mean) << ','
           << format_number(r.boundary_fraction_mc.mc_standard_error) << ',' << format_number(r.bayes_risk_exact)
           << ',' << format_risk(r.plugin_risk_exact) << ',' << format_number(r.boundary_fraction_exact) << '\n';
    }
}

}  // namespace admlab
