#include "admlab/eprocess.hpp"

#include "admlab/report.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace admlab {

EProcessState::EProcessState(double theta0, ConjugatePredictor predictor) : theta0_(theta0), predictor_(predictor) {
    require_open_probability(theta0, "EProcessState");
}

double EProcessState::value() const noexcept { return std::exp(log_value_); }

double EProcessState::next_prediction() const { return conjugate_predict(predictor_, s_, t_); }

EProcessState EProcessState::update(int x) const {
    if (x != 0 && x != 1) throw std::invalid_argument("EProcessState::update: outcome must be 0 or 1");
    const double p = next_prediction();
    EProcessState next = *this;
    next.log_value_ += x == 1 ? std::log(p / theta0_) : std::log((1.0 - p) / (1.0 - theta0_));
    next.t_ += 1;
    next.s_ += static_cast<std::size_t>(x);
    return next;
}

double EProcessState::audit_log_value() const {
    const double a = predictor_.a;
    const double b = predictor_.b;
    const double s = static_cast<double>(s_);
    const double f = static_cast<double>(t_ - s_);
    const double log_marginal = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + std::lgamma(s + a) +
                                std::lgamma(f + b) - std::lgamma(s + f + a + b);
    return log_marginal - s * std::log(theta0_) - f * std::log1p(-theta0_);
}

double eprocess_martingale_deviation(double theta0, std::size_t depth, ConjugatePredictor predictor) {
    require_open_probability(theta0, "eprocess_martingale_deviation");
    if (depth < 1) throw std::invalid_argument("eprocess_martingale_deviation: depth must be >= 1");
    double worst = 0.0;
    for (std::size_t t = 0; t < depth; ++t) {
        for (std::size_t s = 0; s <= t; ++s) {
            const double p = conjugate_predict(predictor, s, t);
            const double expected = theta0 * (p / theta0) + (1.0 - theta0) * ((1.0 - p) / (1.0 - theta0));
            worst = std::max(worst, std::abs(expected - 1.0));
        }
    }
    return worst;
}

bool ville_reject(double value, double alpha) {
    require_open_probability(alpha, "ville_reject");
    return value >= 1.0 / alpha;
}

bool ville_reject(const EProcessState& state, double alpha) { return ville_reject(state.value(), alpha); }

namespace {

double two_sided_critical(double alpha) {
    // The tabulated 1.96 is used verbatim at the conventional level.
    if (alpha == 0.05) return 1.96;
    return boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - alpha / 2.0);
}

}  // namespace

bool naive_peeking_test(std::span<const int> xs, std::span<const std::size_t> looks, double alpha) {
    if (looks.empty()) throw std::invalid_argument("naive_peeking_test: no looks");
    if (!std::is_sorted(looks.begin(), looks.end())) throw std::invalid_argument("naive_peeking_test: looks not sorted");
    if (looks.back() > xs.size()) throw std::invalid_argument("naive_peeking_test: look beyond the data");
    if (looks.front() == 0) throw std::invalid_argument("naive_peeking_test: look at n = 0");
    require_open_probability(alpha, "naive_peeking_test");
    const double critical = two_sided_critical(alpha);
    std::size_t s = 0;
    std::size_t seen = 0;
    for (std::size_t look : looks) {
        for (; seen < look; ++seen) s += static_cast<std::size_t>(xs[seen]);
        const double n = static_cast<double>(look);
        const double z = std::abs(static_cast<double>(s) / n - 0.5) / std::sqrt(0.25 / n);
        if (z > critical) return true;
    }
    return false;
}

namespace {

struct PathOutcome {
    double eprocess_rejected;
    double naive_rejected;
};

PathOutcome simulate_path(const ExperimentConfig& config, std::size_t rep) {
    Philox4x32 gen = derive_substream(config.seed, rep);
    std::vector<int> xs(config.horizon);
    for (auto& x : xs) x = bernoulli_draw(gen, config.theta);

    EProcessState state(config.theta);
    bool crossed = false;
    std::size_t next_look = 0;
    for (std::size_t t = 0; t < config.horizon && !crossed; ++t) {
        state = state.update(xs[t]);
        bool monitored = config.monitor_every_step;
        if (!monitored) {
            while (next_look < config.looks.size() && config.looks[next_look] < state.t()) ++next_look;
            monitored = next_look < config.looks.size() && config.looks[next_look] == state.t();
        }
        if (monitored && ville_reject(state, config.alpha)) crossed = true;
    }
    const bool naive = naive_peeking_test(xs, config.looks, config.alpha);
    return {crossed ? 1.0 : 0.0, naive ? 1.0 : 0.0};
}

}  // namespace

Table3Report run_table3(const ExperimentConfig& config) {
    config.validate();
    if (config.looks.empty() || config.looks.back() > config.horizon) {
        throw std::invalid_argument("run_table3: looks must be nonempty and within the horizon");
    }
    const auto outcomes =
        parallel_map(config.replications, config.threads, [&](std::size_t rep) { return simulate_path(config, rep); });
    std::vector<double> e(outcomes.size()), naive(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        e[i] = outcomes[i].eprocess_rejected;
        naive[i] = outcomes[i].naive_rejected;
    }
    return {summarize(std::span<const double>(e)), summarize(std::span<const double>(naive))};
}

void write_table3_csv(std::ostream& os, const ExperimentConfig& config, const Table3Report& report) {
    os << "# table3 " << config.to_string() << '\n';
    os << "strategy,rejection_rate,mc_se,B,seed\n";
    os << "eprocess," << format_number(report.eprocess_rejection.mean) << ','
       << format_number(report.eprocess_rejection.mc_standard_error) << ',' << config.replications << ','
       << config.seed << '\n';
    os << "naive_peeking," << format_number(report.naive_rejection.mean) << ','
       << format_number(report.naive_rejection.mc_standard_error) << ',' << config.replications << ','
       << config.seed << '\n';
    os << "nominal," << format_number(config.alpha) << ",0," << config.replications << ',' << config.seed << '\n';
}

std::vector<double> eprocess_path(const ExperimentConfig& config, std::size_t replication) {
    Philox4x32 gen = derive_substream(config.seed, replication);
    std::vector<double> values;
    values.reserve(config.horizon);
    EProcessState state(config.theta);
    for (std::size_t t = 0; t < config.horizon; ++t) {
        state = state.update(bernoulli_draw(gen, config.theta));
        values.push_back(state.value());
    }
    return values;
}

}  // namespace admlab
