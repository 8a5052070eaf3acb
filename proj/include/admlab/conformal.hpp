#pragma once

#include "admlab/harness.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace admlab {

/// Split-conformal calibration result. `quantile` is +inf when the
/// finite-sample index exceeds the calibration size.
struct ConformalCalibration {
    double quantile = 0.0;
    std::size_t n_cal = 0;
    double alpha = 0.1;
    std::size_t index = 0;  // 1-based order-statistic index used
};

/// ceil((n + 1)(1 - alpha)), guarded against representation error in
/// products that are mathematically integral.
std::size_t conformal_rank(std::size_t n, double alpha);

/// k-th smallest score with k = conformal_rank(n, alpha). Throws
/// std::invalid_argument on empty or negative scores.
ConformalCalibration calibrate(std::span<const double> scores, double alpha);

struct Interval {
    double lower;
    double upper;
    double half_width() const noexcept { return 0.5 * (upper - lower); }
    bool contains(double y) const noexcept { return lower <= y && y <= upper; }
};

/// {y : |y| <= q} = [-q, q].
Interval predict_interval(const ConformalCalibration& calib);

enum class Design { uniform01, beta25 };

/// Calibration and test covariate laws; Y | X = x ~ N(0, (1 + x)^2).
struct ShiftScenario {
    std::string name;
    Design cal_design;
    Design test_design;

    /// "A" (Unif -> Unif), "B" (Unif -> Beta(2,5)), "C" (Beta(2,5) -> Beta(2,5)).
    static ShiftScenario named(const std::string& name);
};

std::string design_name(Design d);
double draw_design(Design d, Philox4x32& gen);

struct Table4Report {
    std::string scenario;
    SummaryStat quantile;
    SummaryStat coverage;
    SummaryStat half_width;
    std::size_t infinite_quantiles = 0;
};

/// Split-conformal pipeline with score |y|, averaged over replications.
Table4Report run_table4(const ShiftScenario& scenario, const ExperimentConfig& config);

void write_table4_csv(std::ostream& os, const ExperimentConfig& config, std::span<const Table4Report> reports);

/// Full-conformal set for the next Bernoulli outcome after s successes in n.
/// Each candidate label is scored by |z - m| against the mean m of the
/// augmented sample; the label is kept when its score is at most the
/// conformal_rank(n, alpha)-th smallest of the n + 1 augmented scores, so
/// ties keep the label.
struct BinaryConformalSet {
    bool contains0 = false;
    bool contains1 = false;
    double threshold0 = 0.0;  // threshold used for label 0
    double threshold1 = 0.0;  // threshold used for label 1

    bool contains(int y) const noexcept { return y == 1 ? contains1 : contains0; }
    std::size_t size() const noexcept { return (contains0 ? 1u : 0u) + (contains1 ? 1u : 0u); }
};

BinaryConformalSet binary_conformal_set(std::size_t s, std::size_t n, double alpha);

/// Constrained-Bayes set: {y : |y - p| <= q} with p the conjugate predictive
/// and q the (1 - alpha)-quantile of that score under the predictive itself.
/// Reduces to the majority label when its predictive mass is >= 1 - alpha,
/// otherwise {0, 1}.
BinaryConformalSet constrained_bayes_set(std::size_t s, std::size_t n, double alpha,
                                         double predictive_probability);

inline constexpr std::size_t kMaxExactCoverageN = 20;

/// P(Y_{n+1} in set) under iid Bern(theta), summed over the sufficient
/// statistic. Throws std::invalid_argument when n > kMaxExactCoverageN.
double exact_binary_coverage(std::size_t n, double theta, double alpha);

}  // namespace admlab
