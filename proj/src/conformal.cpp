#include "admlab/conformal.hpp"

#include "admlab/decision_core.hpp"
#include "admlab/report.hpp"
#include "admlab/riskset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace admlab {

std::size_t conformal_rank(std::size_t n, double alpha) {
    require_open_probability(alpha, "conformal_rank");
    const double target = static_cast<double>(n + 1) * (1.0 - alpha);
    return static_cast<std::size_t>(std::ceil(target - 1e-9));
}

ConformalCalibration calibrate(std::span<const double> scores, double alpha) {
    if (scores.empty()) throw std::invalid_argument("calibrate: empty score list");
    for (double s : scores) {
        if (!(s >= 0.0)) throw std::invalid_argument("calibrate: scores must be nonnegative");
    }
    ConformalCalibration out;
    out.n_cal = scores.size();
    out.alpha = alpha;
    out.index = conformal_rank(scores.size(), alpha);
    if (out.index > scores.size()) {
        out.quantile = std::numeric_limits<double>::infinity();
        return out;
    }
    std::vector<double> sorted(scores.begin(), scores.end());
    const auto kth = sorted.begin() + static_cast<std::ptrdiff_t>(out.index - 1);
    std::nth_element(sorted.begin(), kth, sorted.end());
    out.quantile = *kth;
    return out;
}

Interval predict_interval(const ConformalCalibration& calib) { return {-calib.quantile, calib.quantile}; }

ShiftScenario ShiftScenario::named(const std::string& name) {
    if (name == "A") return {"A", Design::uniform01, Design::uniform01};
    if (name == "B") return {"B", Design::uniform01, Design::beta25};
    if (name == "C") return {"C", Design::beta25, Design::beta25};
    throw std::invalid_argument("ShiftScenario: unknown scenario '" + name + "' (expected A, B or C)");
}

std::string design_name(Design d) { return d == Design::uniform01 ? "Unif" : "Beta(2,5)"; }

double draw_design(Design d, Philox4x32& gen) {
    const double u = uniform01(gen);
    return d == Design::uniform01 ? u : beta25_quantile(u);
}

namespace {

struct ReplicationResult {
    double quantile;
    double coverage;
};

ReplicationResult run_replication(const ShiftScenario& scenario, const ExperimentConfig& config, std::size_t rep) {
    Philox4x32 gen = derive_substream(config.seed, rep);
    StandardNormal normal;
    std::vector<double> scores(config.n_cal);
    for (auto& score : scores) {
        const double x = draw_design(scenario.cal_design, gen);
        score = std::abs((1.0 + x) * normal(gen));
    }
    const Interval interval = predict_interval(calibrate(scores, config.alpha));
    std::size_t covered = 0;
    for (std::size_t i = 0; i < config.n_test; ++i) {
        const double x = draw_design(scenario.test_design, gen);
        if (interval.contains((1.0 + x) * normal(gen))) ++covered;
    }
    return {interval.upper, static_cast<double>(covered) / static_cast<double>(config.n_test)};
}

}  // namespace

Table4Report run_table4(const ShiftScenario& scenario, const ExperimentConfig& config) {
    config.validate();
    const auto results = parallel_map(config.replications, config.threads,
                                      [&](std::size_t rep) { return run_replication(scenario, config, rep); });
    std::vector<RiskValue> quantiles;
    std::vector<double> coverage;
    quantiles.reserve(results.size());
    coverage.reserve(results.size());
    for (const auto& r : results) {
        quantiles.push_back(RiskValue::from_double(r.quantile));
        coverage.push_back(r.coverage);
    }
    Table4Report report;
    report.scenario = scenario.name;
    report.quantile = summarize(std::span<const RiskValue>(quantiles));
    report.coverage = summarize(std::span<const double>(coverage));
    report.half_width = report.quantile;
    report.infinite_quantiles = report.quantile.count_infinite;
    return report;
}

void write_table4_csv(std::ostream& os, const ExperimentConfig& config, std::span<const Table4Report> reports) {
    os << "# table4 " << config.to_string() << '\n';
    os << "scenario,calibration,test,quantile,quantile_se,coverage,coverage_se,half_width,B,seed\n";
    for (const auto& r : reports) {
        const ShiftScenario sc = ShiftScenario::named(r.scenario);
        os << r.scenario << ',' << design_name(sc.cal_design) << ',' << design_name(sc.test_design) << ','
           << format_number(r.quantile.mean) << ',' << format_number(r.quantile.mc_standard_error) << ','
           << format_number(r.coverage.mean) << ',' << format_number(r.coverage.mc_standard_error) << ','
           << format_number(r.half_width.mean) << ',' << config.replications << ',' << config.seed << '\n';
    }
}

BinaryConformalSet binary_conformal_set(std::size_t s, std::size_t n, double alpha) {
    if (n < 1) throw std::invalid_argument("binary_conformal_set: n must be >= 1");
    if (s > n) throw std::invalid_argument("binary_conformal_set: s exceeds n");
    const std::size_t k = conformal_rank(n, alpha);
    BinaryConformalSet out;
    for (int y = 0; y <= 1; ++y) {
        // Augmented sample: s ones, n - s zeros, plus the candidate y.
        const double ones = static_cast<double>(s + static_cast<std::size_t>(y));
        const double center = ones / static_cast<double>(n + 1);
        const double score_one = 1.0 - center;
        const double score_zero = center;
        const std::size_t count_one = s + static_cast<std::size_t>(y);
        const std::size_t count_zero = n + 1 - count_one;
        // k-th smallest of the multiset {score_zero x count_zero, score_one x count_one}.
        const bool zero_first = score_zero <= score_one;
        const double low = zero_first ? score_zero : score_one;
        const double high = zero_first ? score_one : score_zero;
        const std::size_t low_count = zero_first ? count_zero : count_one;
        const double threshold = k <= low_count ? low : high;
        const double test_score = y == 1 ? score_one : score_zero;
        const bool keep = test_score <= threshold;
        if (y == 0) {
            out.contains0 = keep;
            out.threshold0 = threshold;
        } else {
            out.contains1 = keep;
            out.threshold1 = threshold;
        }
    }
    return out;
}

BinaryConformalSet constrained_bayes_set(std::size_t s, std::size_t n, double alpha, double p) {
    if (s > n) throw std::invalid_argument("constrained_bayes_set: s exceeds n");
    require_open_probability(alpha, "constrained_bayes_set");
    require_closed_probability(p, "constrained_bayes_set");
    // Score |y - p|: label 1 scores 1 - p with mass p, label 0 scores p with mass 1 - p.
    const double score1 = 1.0 - p;
    const double score0 = p;
    double q;
    if (score1 == score0) {
        q = score1;
    } else {
        const bool one_lower = score1 < score0;
        const double low_mass = one_lower ? p : 1.0 - p;
        q = low_mass >= 1.0 - alpha ? std::min(score0, score1) : std::max(score0, score1);
    }
    BinaryConformalSet out;
    out.contains0 = score0 <= q;
    out.contains1 = score1 <= q;
    out.threshold0 = q;
    out.threshold1 = q;
    return out;
}

double exact_binary_coverage(std::size_t n, double theta, double alpha) {
    if (n > kMaxExactCoverageN) throw std::invalid_argument("exact_binary_coverage: n too large for enumeration");
    require_open_probability(theta, "exact_binary_coverage");
    std::vector<double> terms(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        const BinaryConformalSet set = binary_conformal_set(s, n, alpha);
        const double hit = (set.contains1 ? theta : 0.0) + (set.contains0 ? 1.0 - theta : 0.0);
        terms[s] = std::exp(log_binomial_pmf(s, n, theta)) * hit;
    }
    return pairwise_sum(terms);
}

}  // namespace admlab
