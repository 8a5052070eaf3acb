#include "admlab/approachability.hpp"

#include "admlab/decision_core.hpp"
#include "admlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace admlab {

double defensive_predict(const CalibrationLedger& ledger) noexcept {
    if (ledger.deficit > 0.0) return 1.0;
    if (ledger.deficit < 0.0) return 0.0;
    return 0.5;
}

CalibrationLedger ledger_update(const CalibrationLedger& ledger, double p, int x) {
    require_closed_probability(p, "ledger_update");
    if (x != 0 && x != 1) throw std::invalid_argument("ledger_update: outcome must be 0 or 1");
    CalibrationLedger next = ledger;
    next.t += 1;
    next.sum_p += p;
    next.sum_x += x;
    next.deficit += static_cast<double>(x) - p;
    return next;
}

double calibration_error(const CalibrationLedger& ledger) {
    if (ledger.t == 0) throw std::invalid_argument("calibration_error: no rounds played");
    return std::abs(ledger.deficit) / static_cast<double>(ledger.t);
}

namespace {

class IidSource final : public SequenceSource {
public:
    IidSource(double theta, std::uint64_t seed) : theta_(theta), gen_(derive(seed)) {
        require_open_probability(theta, "iid source");
    }
    std::string name() const override { return "iid"; }
    int next(double) override { return bernoulli_draw(gen_, theta_); }

private:
    static Philox4x32 derive(std::uint64_t seed) { return Philox4x32(seed, 0); }
    double theta_;
    Philox4x32 gen_;
};

class PeriodicSource final : public SequenceSource {
public:
    explicit PeriodicSource(std::vector<int> pattern) : pattern_(std::move(pattern)) {
        if (pattern_.empty()) throw std::invalid_argument("periodic source: empty pattern");
        for (int x : pattern_) {
            if (x != 0 && x != 1) throw std::invalid_argument("periodic source: entries must be 0 or 1");
        }
    }
    std::string name() const override { return "periodic"; }
    int next(double) override {
        const int x = pattern_[pos_];
        pos_ = (pos_ + 1) % pattern_.size();
        return x;
    }

private:
    std::vector<int> pattern_;
    std::size_t pos_ = 0;
};

class AdaptiveAdversary final : public SequenceSource {
public:
    std::string name() const override { return "adversary"; }
    int next(double forecast) override { return forecast > 0.5 ? 0 : 1; }
};

class ConstantSource final : public SequenceSource {
public:
    explicit ConstantSource(int x) : x_(x) {
        if (x != 0 && x != 1) throw std::invalid_argument("constant source: outcome must be 0 or 1");
    }
    std::string name() const override { return x_ == 1 ? "constant1" : "constant0"; }
    int next(double) override { return x_; }

private:
    int x_;
};

}  // namespace

std::unique_ptr<SequenceSource> make_iid_source(double theta, std::uint64_t seed) {
    return std::make_unique<IidSource>(theta, seed);
}

std::unique_ptr<SequenceSource> make_periodic_source(std::vector<int> pattern) {
    return std::make_unique<PeriodicSource>(std::move(pattern));
}

std::unique_ptr<SequenceSource> make_adaptive_adversary() { return std::make_unique<AdaptiveAdversary>(); }

std::unique_ptr<SequenceSource> make_constant_source(int x) { return std::make_unique<ConstantSource>(x); }

ErrorCurve run_cesaro_experiment(SequenceSource& source, std::size_t horizon) {
    if (horizon < 1) throw std::invalid_argument("run_cesaro_experiment: horizon must be >= 1");
    ErrorCurve curve;
    curve.source = source.name();
    curve.errors.reserve(horizon);
    CalibrationLedger ledger;
    for (std::size_t round = 0; round < horizon; ++round) {
        const double p = defensive_predict(ledger);
        ledger = ledger_update(ledger, p, source.next(p));
        curve.max_abs_deficit = std::max(curve.max_abs_deficit, std::abs(ledger.deficit));
        curve.errors.push_back(calibration_error(ledger));
    }
    curve.final_ledger = ledger;
    return curve;
}

void write_error_curve_csv(std::ostream& os, const ErrorCurve& curve, std::size_t stride) {
    if (stride == 0) stride = 1;
    for (std::size_t i = 0; i < curve.errors.size(); ++i) {
        const std::size_t t = i + 1;
        if (t % stride != 0 && t != curve.errors.size()) continue;
        os << curve.source << ',' << t << ',' << format_number(curve.errors[i]) << '\n';
    }
}

double defensive_forecast_after(std::span<const int> history) {
    CalibrationLedger ledger;
    for (int x : history) ledger = ledger_update(ledger, defensive_predict(ledger), x);
    return defensive_predict(ledger);
}

WitnessReport non_bayes_witness(std::size_t horizon, std::span<const ConjugatePredictor> grid, double tolerance) {
    if (grid.empty()) throw std::invalid_argument("non_bayes_witness: empty predictor grid");
    if (horizon > 20) throw std::invalid_argument("non_bayes_witness: horizon too large to enumerate");
    WitnessReport best;
    best.gap = -1.0;
    for (std::size_t len = 0; len <= horizon; ++len) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            std::vector<int> history(len);
            std::size_t s = 0;
            // Most significant bit first, so histories come out in lexicographic order.
            for (std::size_t i = 0; i < len; ++i) {
                history[i] = static_cast<int>((bits >> (len - 1 - i)) & 1u);
                s += static_cast<std::size_t>(history[i]);
            }
            const double forecast = defensive_forecast_after(history);
            double gap = std::numeric_limits<double>::infinity();
            double closest = 0.0;
            for (const auto& pred : grid) {
                const double c = conjugate_predict(pred, s, len);
                if (std::abs(c - forecast) < gap) {
                    gap = std::abs(c - forecast);
                    closest = c;
                }
            }
            if (gap > tolerance) {
                return {true, history, forecast, closest, gap};
            }
            if (gap > best.gap) best = {false, history, forecast, closest, gap};
        }
    }
    return best;
}

RiskValue defensive_exact_risk(std::size_t n, double theta) {
    require_open_probability(theta, "defensive_exact_risk");
    if (n > 20) throw std::invalid_argument("defensive_exact_risk: n too large to enumerate");
    RiskValue total;
    std::vector<int> history(n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        std::size_t s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            history[i] = static_cast<int>((bits >> i) & 1u);
            s += static_cast<std::size_t>(history[i]);
        }
        const double log_prob = static_cast<double>(s) * std::log(theta) + static_cast<double>(n - s) * std::log1p(-theta);
        total += scale(std::exp(log_prob), log_loss(theta, defensive_forecast_after(history)));
        if (total.is_infinite()) return total;
    }
    return total;
}

double defensive_prior_predictive_deviation(std::size_t depth, const ConjugatePredictor& prior) {
    if (depth < 1 || depth > 20) throw std::invalid_argument("defensive_prior_predictive_deviation: depth in [1,20]");
    double worst = 0.0;
    for (std::size_t len = 0; len < depth; ++len) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            CalibrationLedger ledger;
            std::size_t s = 0;
            for (std::size_t i = 0; i < len; ++i) {
                const int x = static_cast<int>((bits >> i) & 1u);
                ledger = ledger_update(ledger, defensive_predict(ledger), x);
                s += static_cast<std::size_t>(x);
            }
            const double p = defensive_predict(ledger);
            const double next_one = defensive_predict(ledger_update(ledger, p, 1));
            const double next_zero = defensive_predict(ledger_update(ledger, p, 0));
            const double q = conjugate_predict(prior, s, len);
            worst = std::max(worst, std::abs(q * next_one + (1.0 - q) * next_zero - p));
        }
    }
    return worst;
}

}  // namespace admlab
