#include "admlab/classification.hpp"

#include "admlab/approachability.hpp"
#include "admlab/bernoulli.hpp"
#include "admlab/conformal.hpp"
#include "admlab/eprocess.hpp"
#include "admlab/report.hpp"
#include "admlab/riskset.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace admlab {

std::string procedure_name(Procedure p) {
    switch (p) {
        case Procedure::P1: return "P1";
        case Procedure::P2: return "P2";
        case Procedure::P3: return "P3";
        case Procedure::P4: return "P4";
        case Procedure::P5: return "P5";
        case Procedure::P6: return "P6";
    }
    return "?";
}

std::string procedure_label(Procedure p) {
    switch (p) {
        case Procedure::P1: return "P1: Bayes";
        case Procedure::P2: return "P2: Plug-in MLE";
        case Procedure::P3: return "P3: LR e-proc";
        case Procedure::P4: return "P4: Conformal";
        case Procedure::P5: return "P5: Defensive";
        case Procedure::P6: return "P6: Constr. Bayes";
    }
    return "?";
}

std::string criterion_name(Criterion c) {
    switch (c) {
        case Criterion::martingale: return "martingale";
        case Criterion::blackwell: return "blackwell";
        case Criterion::av: return "av";
        case Criterion::coverage: return "coverage";
        case Criterion::caa: return "caa";
        case Criterion::constructive: return "constructive";
        case Criterion::blackwell_within_coverage: return "blackwell_within_coverage";
    }
    return "?";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::check: return "check";
        case Verdict::cross: return "cross";
        case Verdict::not_applicable: return "NA";
        case Verdict::unverifiable: return "unverifiable";
    }
    return "?";
}

std::string verdict_symbol(Verdict v) {
    switch (v) {
        case Verdict::check: return "✓";
        case Verdict::cross: return "×";
        case Verdict::not_applicable: return "N/A";
        case Verdict::unverifiable: return "?";
    }
    return "?";
}

std::optional<Verdict> published_verdict(Procedure p, Criterion c) {
    using V = Verdict;
    constexpr V Y = V::check, X = V::cross, N = V::not_applicable, U = V::unverifiable;
    // Rows P1..P6; columns martingale, blackwell, av, coverage, caa, constructive.
    static constexpr V table[6][6] = {
        {Y, Y, N, N, U, Y},
        {Y, X, N, N, U, X},
        {Y, N, Y, X, N, N},
        {X, N, X, Y, N, N},
        {X, X, X, X, Y, X},
        {Y, X, N, Y, Y, X},
    };
    if (c == Criterion::blackwell_within_coverage) {
        if (p == Procedure::P6) return Verdict::check;
        return std::nullopt;
    }
    return table[static_cast<int>(p)][static_cast<int>(c)];
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> theta_grid(std::size_t points) {
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i + 1) / static_cast<double>(points + 1);
    return grid;
}

MatrixCell structural(Procedure p, Criterion c, Verdict v, std::string note) {
    return {p, c, v, {"output_type", kNaN, "static: procedure output type", std::move(note)}, ""};
}

MatrixCell not_applicable(Procedure p, Criterion c, const std::string& output_type) {
    return structural(p, c, Verdict::not_applicable,
                      "procedure emits " + output_type + "; criterion defined for another object type");
}

// Point forecast induced by a binary set: the uniform distribution over it.
double set_forecast(const BinaryConformalSet& set) {
    if (set.size() == 2) return 0.5;
    if (set.contains1) return 1.0;
    if (set.contains0) return 0.0;
    return 0.5;
}

BinaryConformalSet p6_set(std::size_t s, std::size_t n, double alpha) {
    return constrained_bayes_set(s, n, alpha, conjugate_predict(ConjugatePredictor::jeffreys(), s, n));
}

double max_bayes_deviation() {
    const ConjugatePredictor grid[] = {{0.5, 0.5}, {1.0, 1.0}, {2.0, 5.0}, {0.3, 3.0}, {7.0, 0.8}};
    double worst = 0.0;
    for (const auto& pred : grid) worst = std::max(worst, bayes_martingale_deviation(pred, 50));
    return worst;
}

// Deviation of a set-induced forecast from the martingale identity when the
// next label follows the Beta(1/2,1/2) predictive.
template <typename SetFn>
double set_forecast_deviation(std::size_t n_max, SetFn&& make_set) {
    const auto jeffreys = ConjugatePredictor::jeffreys();
    double worst = 0.0;
    for (std::size_t n = 1; n < n_max; ++n) {
        for (std::size_t s = 0; s <= n; ++s) {
            const double q = conjugate_predict(jeffreys, s, n);
            const double now = set_forecast(make_set(s, n));
            const double next = q * set_forecast(make_set(s + 1, n + 1)) + (1.0 - q) * set_forecast(make_set(s, n + 1));
            worst = std::max(worst, std::abs(next - now));
        }
    }
    return worst;
}

MatrixCell p1_martingale() {
    const double dev = max_bayes_deviation();
    return {Procedure::P1, Criterion::martingale, dev <= 1e-12 ? Verdict::check : Verdict::cross,
            {"bayes_martingale_deviation", dev, "<= 1e-12 (n < 50, five Beta priors)", "exact lattice enumeration"}, ""};
}

MatrixCell p2_martingale() {
    const double dev = plugin_self_martingale_deviation(50);
    return {Procedure::P2, Criterion::martingale, dev <= 1e-12 ? Verdict::check : Verdict::cross,
            {"plugin_self_martingale_deviation", dev, "<= 1e-12 (1 <= n < 50)",
             "next outcome drawn from the plug-in's own forecast"},
            ""};
}

MatrixCell p3_martingale() {
    double dev = 0.0;
    for (double theta0 : {0.5, 0.3, 0.8}) dev = std::max(dev, eprocess_martingale_deviation(theta0, 30));
    return {Procedure::P3, Criterion::martingale, dev <= 1e-12 ? Verdict::check : Verdict::cross,
            {"eprocess_martingale_deviation", dev, "<= 1e-12 (lattice depth 30)", "one-step factor expectation under H0"},
            ""};
}

MatrixCell p4_martingale(double alpha) {
    const double dev =
        set_forecast_deviation(20, [alpha](std::size_t s, std::size_t n) { return binary_conformal_set(s, n, alpha); });
    return {Procedure::P4, Criterion::martingale, dev > 1e-6 ? Verdict::cross : Verdict::check,
            {"set_forecast_deviation", dev, "cross if > 1e-6",
             "uniform-over-set forecast under the Beta(1/2,1/2) predictive, n < 20"},
            ""};
}

MatrixCell p5_martingale() {
    const double dev = defensive_prior_predictive_deviation(12, ConjugatePredictor::jeffreys());
    return {Procedure::P5, Criterion::martingale, dev > 1e-6 ? Verdict::cross : Verdict::check,
            {"defensive_prior_predictive_deviation", dev, "cross if > 1e-6",
             "all histories of length < 12 under the Beta(1/2,1/2) predictive"},
            ""};
}

MatrixCell p6_martingale() {
    const double dev = bayes_martingale_deviation(ConjugatePredictor::jeffreys(), 50);
    return {Procedure::P6, Criterion::martingale, dev <= 1e-12 ? Verdict::check : Verdict::cross,
            {"bayes_martingale_deviation", dev, "<= 1e-12 (n < 50)", "set center is the Beta(1/2,1/2) predictive"}, ""};
}

// P1 is the Bayes rule of the Beta(1/2,1/2) prior: its integrated risk is
// minimal against every candidate, and its risk is finite everywhere.
MatrixCell p1_blackwell(std::uint64_t seed) {
    constexpr std::size_t n = 10;
    const auto jeffreys = ConjugatePredictor::jeffreys();
    const PredictiveRule bayes = conjugate_rule(jeffreys, n);
    const RiskValue own = beta_prior_integrated_risk(bayes, jeffreys);

    std::vector<PredictiveRule> candidates{plugin_rule(n), conjugate_rule(ConjugatePredictor::laplace(), n),
                                           conjugate_rule({2.0, 2.0}, n), PredictiveRule::constant(n, 0.5)};
    Philox4x32 gen(seed, 0xC1A55ull);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> probs(n + 1);
        for (auto& p : probs) p = uniform_open01(gen);
        candidates.emplace_back(n, std::move(probs));
    }
    const FiniteParamSpace space({0.3, 0.7}, FiniteParamSpace::Kind::bernoulli);
    for (int i = 1; i < 10; ++i) {
        candidates.push_back(bayes_rule_for_prior(Prior::two_point(0.1 * i), space, n));
    }
    double violation = 0.0;
    for (const auto& c : candidates) {
        const RiskValue r = beta_prior_integrated_risk(c, jeffreys);
        if (r.is_finite()) violation = std::max(violation, own.value() - r.value());
    }
    bool finite = true;
    for (double theta : theta_grid(99)) finite = finite && exact_risk(bayes, theta).is_finite();
    const bool ok = violation <= 1e-10 && finite;
    return {Procedure::P1, Criterion::blackwell, ok ? Verdict::check : Verdict::cross,
            {"prior_integrated_risk_minimal", violation, "violation <= 1e-10 and finite risk on 99-point grid",
             "Beta(1/2,1/2)-integrated risk vs " + std::to_string(candidates.size()) + " candidates, n = 10"},
            ""};
}

MatrixCell p2_blackwell() {
    const auto grid = theta_grid(99);
    bool all = true;
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 20; ++n) {
        const DominanceCertificate cert = dominance_certificate(n, grid);
        all = all && cert.all_dominated;
        checked += cert.entries.size();
        for (const auto& e : cert.entries) all = all && e.plugin_risk.is_infinite() && e.bayes_risk.is_finite();
    }
    return {Procedure::P2, Criterion::blackwell, all ? Verdict::cross : Verdict::check,
            {"dominance_certificate", static_cast<double>(checked), "cross if dominated at every (n, theta)",
             "dominated for all theta grid, plug-in risk +inf (n = 1..20, 99 thetas)"},
            ""};
}

MatrixCell p5_blackwell() {
    const PredictiveRule bayes = conjugate_rule(ConjugatePredictor::jeffreys(), 10);
    bool dominated = true;
    for (double theta : theta_grid(9)) {
        dominated = dominated && defensive_exact_risk(10, theta).is_infinite() && exact_risk(bayes, theta).is_finite();
    }
    return {Procedure::P5, Criterion::blackwell, dominated ? Verdict::cross : Verdict::check,
            {"defensive_exact_risk", std::numeric_limits<double>::infinity(), "cross if +inf where P1 is finite",
             "n = 10, 9-point theta grid; forecasts in {0,1} after the first round"},
            ""};
}

MatrixCell p6_blackwell(double alpha) {
    constexpr std::size_t n = 20;
    const PredictiveRule induced =
        PredictiveRule::from_function(n, [alpha](std::size_t s, std::size_t m) { return set_forecast(p6_set(s, m, alpha)); });
    const PredictiveRule bayes = conjugate_rule(ConjugatePredictor::jeffreys(), n);
    bool dominated = true;
    for (double theta : theta_grid(9)) dominated = dominated && exact_risk(bayes, theta) < exact_risk(induced, theta);
    return {Procedure::P6, Criterion::blackwell, dominated ? Verdict::cross : Verdict::check,
            {"set_forecast_dominance", exact_risk(induced, 0.5).value(),
             "cross if P1 risk < induced risk at every theta",
             "uniform-over-set point forecast vs unconstrained Bayes point predictor, n = 20"},
            "†"};
}

// Within sets meeting the predictive coverage constraint, P6 picks a
// smallest feasible set for every statistic.
MatrixCell p6_within_coverage(double alpha) {
    std::size_t mismatches = 0;
    std::size_t cases = 0;
    for (std::size_t n = 0; n <= 30; ++n) {
        for (std::size_t s = 0; s <= n; ++s) {
            const double p = conjugate_predict(ConjugatePredictor::jeffreys(), s, n);
            const BinaryConformalSet set = p6_set(s, n, alpha);
            std::size_t best = 3;
            for (int mask = 1; mask < 4; ++mask) {
                const bool has0 = (mask & 1) != 0;
                const bool has1 = (mask & 2) != 0;
                const double mass = (has0 ? 1.0 - p : 0.0) + (has1 ? p : 0.0);
                if (mass >= 1.0 - alpha) best = std::min<std::size_t>(best, (has0 ? 1 : 0) + (has1 ? 1 : 0));
            }
            const double own_mass = (set.contains0 ? 1.0 - p : 0.0) + (set.contains1 ? p : 0.0);
            if (own_mass < 1.0 - alpha || set.size() != best) ++mismatches;
            ++cases;
        }
    }
    return {Procedure::P6, Criterion::blackwell_within_coverage, mismatches == 0 ? Verdict::check : Verdict::cross,
            {"constrained_minimal_size", static_cast<double>(mismatches), "check if 0 non-minimal feasible choices",
             std::to_string(cases) + " statistics (n <= 30); expected size under the predictive is minimised per s"},
            "†"};
}

MatrixCell p3_av(const MatrixConfig& config) {
    double dev = eprocess_martingale_deviation(0.5, 30);
    ExperimentConfig cfg = table3_config();
    cfg.seed = config.seed;
    cfg.replications = config.replications;
    cfg.threads = config.threads;
    const Table3Report rep = run_table3(cfg);
    const bool ok = dev <= 1e-12 && rep.eprocess_rejection.mean <= cfg.alpha;
    std::ostringstream note;
    note << "Ville crossing rate " << format_number(rep.eprocess_rejection.mean) << " (se "
         << format_number(rep.eprocess_rejection.mc_standard_error) << ", B = " << cfg.replications
         << ", horizon " << cfg.horizon << ")";
    return {Procedure::P3, Criterion::av, ok ? Verdict::check : Verdict::cross,
            {"eprocess_martingale_deviation+ville_mc", rep.eprocess_rejection.mean,
             "deviation <= 1e-12 and crossing rate <= 0.05", note.str()},
            ""};
}

MatrixCell p4_coverage() {
    double margin = std::numeric_limits<double>::infinity();
    for (double alpha : {0.05, 0.1, 0.2}) {
        for (std::size_t n = 1; n <= 12; ++n) {
            for (int k = 1; k <= 9; ++k) {
                margin = std::min(margin, exact_binary_coverage(n, 0.1 * k, alpha) - (1.0 - alpha));
            }
        }
    }
    return {Procedure::P4, Criterion::coverage, margin >= -1e-12 ? Verdict::check : Verdict::cross,
            {"exact_binary_coverage", margin, "min(coverage - (1 - alpha)) >= -1e-12",
             "n = 1..12, theta = 0.1..0.9, alpha in {0.05, 0.1, 0.2}"},
            ""};
}

// theta ~ Beta(1/2,1/2), S_n | theta ~ Bin, Y | theta ~ Bern.
MatrixCell p6_coverage(const MatrixConfig& config) {
    constexpr std::size_t n = 20;
    const double alpha = config.alpha;
    const auto hits = parallel_map(config.replications, config.threads, [&](std::size_t rep) {
        Philox4x32 gen(config.seed ^ 0x6C6F76ull, rep);
        const double u = uniform01(gen);
        const double theta = std::pow(std::sin(0.5 * std::numbers::pi * u), 2);
        std::size_t s = 0;
        for (std::size_t i = 0; i < n; ++i) s += static_cast<std::size_t>(bernoulli_draw(gen, theta));
        const int y = bernoulli_draw(gen, theta);
        return p6_set(s, n, alpha).contains(y) ? 1.0 : 0.0;
    });
    const SummaryStat cov = summarize(std::span<const double>(hits));
    const double floor = 1.0 - alpha - 3.0 * cov.mc_standard_error;
    std::ostringstream note;
    note << "prior-predictive MC, n = 20, B = " << config.replications << ", se "
         << format_number(cov.mc_standard_error);
    return {Procedure::P6, Criterion::coverage, cov.mean >= floor ? Verdict::check : Verdict::cross,
            {"posterior_quantile_set_coverage_mc", cov.mean, "coverage >= 1 - alpha - 3 se", note.str()}, ""};
}

// Calibration error of the Beta(1/2,1/2) predictive, or of the plug-in, when
// an adversary plays against the current forecast. Reported only.
MatrixCell bayesish_caa(Procedure p, std::size_t horizon) {
    double deficit = 0.0;
    std::size_t s = 0;
    for (std::size_t t = 0; t < horizon; ++t) {
        double f;
        if (p == Procedure::P1 || t == 0) {
            f = conjugate_predict(ConjugatePredictor::jeffreys(), s, t);
        } else {
            f = plugin_predict(s, t);
        }
        const int x = f > 0.5 ? 0 : 1;
        deficit += static_cast<double>(x) - f;
        s += static_cast<std::size_t>(x);
    }
    const double err = std::abs(deficit) / static_cast<double>(horizon);
    return {p, Criterion::caa, Verdict::unverifiable,
            {"adversarial_calibration_error", err, "none: convergence under adversarial sequences not established",
             "reported only; iid convergence holds, adversarial behaviour is not guaranteed"},
            "‡"};
}

MatrixCell p5_caa(const MatrixConfig& config) {
    std::vector<std::unique_ptr<SequenceSource>> suite;
    suite.push_back(make_iid_source(0.3, config.seed));
    suite.push_back(make_periodic_source({1, 1, 0}));
    suite.push_back(make_adaptive_adversary());
    suite.push_back(make_constant_source(1));
    double worst = 0.0;
    for (auto& src : suite) worst = std::max(worst, run_cesaro_experiment(*src, config.caa_horizon).max_abs_deficit);
    return {Procedure::P5, Criterion::caa, worst <= 1.0 ? Verdict::check : Verdict::cross,
            {"max_abs_deficit", worst, "<= 1 after every round",
             "iid(0.3), periodic 110, adaptive adversary, constant 1; horizon " + std::to_string(config.caa_horizon)},
            ""};
}

// Cesàro miscoverage of P6 against a suite that includes an adversary
// playing the excluded label whenever the set is a singleton.
MatrixCell p6_caa(const MatrixConfig& config) {
    const std::size_t horizon = config.caa_horizon;
    const double alpha = config.alpha;
    enum class Kind { iid, periodic, adversary };
    double worst = 0.0;
    for (Kind kind : {Kind::iid, Kind::periodic, Kind::adversary}) {
        Philox4x32 gen(config.seed, 0x5E7ull);
        std::size_t s = 0;
        std::size_t misses = 0;
        for (std::size_t t = 0; t < horizon; ++t) {
            const BinaryConformalSet set = p6_set(s, t, alpha);
            int x;
            switch (kind) {
                case Kind::iid: x = bernoulli_draw(gen, 0.95); break;
                case Kind::periodic: x = (t % 3 == 2) ? 0 : 1; break;
                default: x = set.size() == 1 ? (set.contains1 ? 0 : 1) : 1; break;
            }
            if (!set.contains(x)) ++misses;
            s += static_cast<std::size_t>(x);
        }
        worst = std::max(worst, static_cast<double>(misses) / static_cast<double>(horizon));
    }
    const double bound = 2.0 * alpha + 2.0 / static_cast<double>(horizon);
    return {Procedure::P6, Criterion::caa, worst <= bound ? Verdict::check : Verdict::cross,
            {"cesaro_miscoverage", worst, "<= 2 alpha + 2 / T",
             "iid(0.95), periodic 110, singleton adversary; horizon " + std::to_string(horizon)},
            ""};
}

MatrixCell p1_constructive() {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double worst = 0.0;
    for (std::size_t n = 0; n <= 20; ++n) {
        for (std::size_t s = 0; s <= n; ++s) {
            const double a = static_cast<double>(s) - 0.5;
            const double b = static_cast<double>(n - s) - 0.5;
            auto density = [&](double th, double thc) {
                const double one_minus = thc > 0.0 ? thc : 1.0 - th;
                return std::exp(a * std::log(th) + b * std::log(one_minus));
            };
            const double mass = integrator.integrate(density, 0.0, 1.0);
            const double first = integrator.integrate([&](double th, double thc) { return th * density(th, thc); }, 0.0, 1.0);
            worst = std::max(worst, std::abs(first / mass - conjugate_predict(ConjugatePredictor::jeffreys(), s, n)));
        }
    }
    return {Procedure::P1, Criterion::constructive, worst <= 1e-9 ? Verdict::check : Verdict::cross,
            {"posterior_mean_quadrature", worst, "<= 1e-9 (n <= 20)",
             "forecast equals the posterior mean of an explicit Beta(1/2,1/2) prior"},
            ""};
}

// A posterior mean under any prior on (0,1) lies in (0,1); an extreme
// forecast after some history is therefore a witness against every prior.
MatrixCell p2_constructive() {
    std::size_t witness_n = 0;
    for (std::size_t n = 1; n <= 10 && witness_n == 0; ++n) {
        const double f = plugin_predict(0, n);
        if (f == 0.0 || f == 1.0) witness_n = n;
    }
    return {Procedure::P2, Criterion::constructive, witness_n > 0 ? Verdict::cross : Verdict::check,
            {"extreme_forecast_witness", static_cast<double>(witness_n), "cross if a forecast in {0,1} exists",
             "history of zeros of length " + std::to_string(witness_n) + " gives forecast 0"},
            ""};
}

MatrixCell p5_constructive() {
    std::vector<ConjugatePredictor> grid;
    for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        for (double b : {0.1, 0.5, 1.0, 2.0, 5.0}) grid.emplace_back(a, b);
    }
    const WitnessReport w = non_bayes_witness(6, grid);
    std::string history;
    for (int x : w.history) history += static_cast<char>('0' + x);
    return {Procedure::P5, Criterion::constructive, w.found ? Verdict::cross : Verdict::check,
            {"non_bayes_witness", w.gap, "cross if gap > 1e-9",
             "history '" + history + "' forecast " + format_number(w.defensive_prediction) + " vs nearest conjugate " +
                 format_number(w.closest_conjugate_prediction) + "; extreme forecasts match no interior prior"},
            ""};
}

MatrixCell p6_constructive(double alpha) {
    std::size_t witness_n = 0;
    for (std::size_t n = 1; n <= 60 && witness_n == 0; ++n) {
        const double f = set_forecast(p6_set(0, n, alpha));
        if (f == 0.0 || f == 1.0) witness_n = n;
    }
    return {Procedure::P6, Criterion::constructive, witness_n > 0 ? Verdict::cross : Verdict::check,
            {"extreme_forecast_witness", static_cast<double>(witness_n), "cross if the set-induced forecast hits {0,1}",
             "zeros history of length " + std::to_string(witness_n) +
                 " gives a singleton set; as a point predictor it matches no prior"},
            "†"};
}

}  // namespace

std::vector<MatrixCell> derive_matrix(const MatrixConfig& config) {
    if (config.replications < 2) throw std::invalid_argument("derive_matrix: replications must be >= 2");
    if (config.caa_horizon < 1) throw std::invalid_argument("derive_matrix: caa_horizon must be >= 1");
    require_open_probability(config.alpha, "derive_matrix");
    const double alpha = config.alpha;
    using P = Procedure;
    using C = Criterion;
    const std::string point = "a point forecast";
    const std::string eproc = "a scalar e-process";
    const std::string set = "a prediction set";

    std::vector<MatrixCell> cells;
    cells.push_back(p1_martingale());
    cells.push_back(p1_blackwell(config.seed));
    cells.push_back(not_applicable(P::P1, C::av, point));
    cells.push_back(not_applicable(P::P1, C::coverage, point));
    cells.push_back(bayesish_caa(P::P1, config.caa_horizon));
    cells.push_back(p1_constructive());

    cells.push_back(p2_martingale());
    cells.push_back(p2_blackwell());
    cells.push_back(not_applicable(P::P2, C::av, point));
    cells.push_back(not_applicable(P::P2, C::coverage, point));
    cells.push_back(bayesish_caa(P::P2, config.caa_horizon));
    cells.push_back(p2_constructive());

    cells.push_back(p3_martingale());
    cells.push_back(not_applicable(P::P3, C::blackwell, eproc));
    cells.push_back(p3_av(config));
    cells.push_back(structural(P::P3, C::coverage, Verdict::cross,
                               "emits a scalar test process, not a prediction set; no coverage guarantee to check"));
    cells.push_back(not_applicable(P::P3, C::caa, eproc));
    cells.push_back(not_applicable(P::P3, C::constructive, eproc));

    cells.push_back(p4_martingale(alpha));
    cells.push_back(not_applicable(P::P4, C::blackwell, set));
    cells.push_back(structural(P::P4, C::av, Verdict::cross,
                               "emits sets, not a nonnegative scalar process; the rank construction controls "
                               "coverage probability, not type-I error"));
    cells.push_back(p4_coverage());
    cells.push_back(not_applicable(P::P4, C::caa, set));
    cells.push_back(not_applicable(P::P4, C::constructive, set));

    cells.push_back(p5_martingale());
    cells.push_back(p5_blackwell());
    cells.push_back(structural(P::P5, C::av, Verdict::cross,
                               "point forecaster: calibration control gives no type-I error control at stopping times"));
    cells.push_back(structural(P::P5, C::coverage, Verdict::cross,
                               "point forecaster: outputs no set, so marginal coverage cannot hold"));
    cells.push_back(p5_caa(config));
    cells.push_back(p5_constructive());

    cells.push_back(p6_martingale());
    cells.push_back(p6_blackwell(alpha));
    cells.push_back(not_applicable(P::P6, C::av, set));
    cells.push_back(p6_coverage(config));
    cells.push_back(p6_caa(config));
    cells.push_back(p6_constructive(alpha));
    cells.push_back(p6_within_coverage(alpha));
    return cells;
}

std::vector<CellMismatch> compare_with_published(std::span<const MatrixCell> cells) {
    std::vector<CellMismatch> out;
    for (const auto& c : cells) {
        const auto pub = published_verdict(c.procedure, c.criterion);
        if (pub && *pub != c.verdict) out.push_back({c.procedure, c.criterion, c.verdict, *pub});
    }
    for (Procedure p : kProcedures) {
        for (Criterion cr : kGridCriteria) {
            const bool present = std::any_of(cells.begin(), cells.end(),
                                             [&](const MatrixCell& c) { return c.procedure == p && c.criterion == cr; });
            const auto pub = published_verdict(p, cr);
            if (!present && !cells.empty() && pub && *pub != Verdict::not_applicable) {
                out.push_back({p, cr, Verdict::not_applicable, *pub});
            }
        }
    }
    return out;
}

namespace {

std::string pad(const std::string& s, std::size_t width) {
    // Column widths count code points, so multibyte symbols line up.
    std::size_t cps = 0;
    for (unsigned char ch : s) cps += (ch & 0xC0) != 0x80 ? 1 : 0;
    return cps >= width ? s : s + std::string(width - cps, ' ');
}

}  // namespace

void render_matrix_text(std::ostream& os, std::span<const MatrixCell> cells) {
    constexpr std::size_t first = 19;
    constexpr std::size_t col = 13;
    os << pad("procedure", first);
    for (Criterion c : kGridCriteria) os << pad(criterion_name(c), col);
    os << '\n';
    for (Procedure p : kProcedures) {
        bool any = false;
        std::string row = pad(procedure_label(p), first);
        for (Criterion c : kGridCriteria) {
            std::string entry;
            for (const auto& cell : cells) {
                if (cell.procedure == p && cell.criterion == c) {
                    entry = verdict_symbol(cell.verdict) + cell.footnote;
                    any = true;
                }
            }
            row += pad(entry, col);
        }
        if (any) {
            while (!row.empty() && row.back() == ' ') row.pop_back();
            os << row << '\n';
        }
    }
    for (const auto& cell : cells) {
        if (cell.criterion == Criterion::blackwell_within_coverage) {
            os << cell.footnote << ' ' << procedure_name(cell.procedure)
               << " blackwell within the coverage-feasible class: " << verdict_symbol(cell.verdict) << '\n';
        }
    }
}

void render_matrix_csv(std::ostream& os, std::span<const MatrixCell> cells) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        return out + "\"";
    };
    os << "procedure,criterion,verdict,footnote,check,measured,threshold,note\n";
    for (const auto& c : cells) {
        os << procedure_name(c.procedure) << ',' << criterion_name(c.criterion) << ',' << verdict_name(c.verdict) << ','
           << c.footnote << ',' << c.evidence.check << ',' << format_number(c.evidence.measured) << ','
           << quote(c.evidence.threshold) << ',' << quote(c.evidence.note) << '\n';
    }
}

}  // namespace admlab
