#include "admlab/checks.hpp"

#include "admlab/approachability.hpp"
#include "admlab/bernoulli.hpp"
#include "admlab/classification.hpp"
#include "admlab/cli.hpp"
#include "admlab/conformal.hpp"
#include "admlab/eprocess.hpp"
#include "admlab/gaussian.hpp"
#include "admlab/report.hpp"
#include "admlab/riskset.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace admlab {

std::string criterion_title(int id) {
    switch (id) {
        case 1: return "table2-bayes-column";
        case 2: return "table2-boundary-fraction";
        case 3: return "plugin-dominance";
        case 4: return "martingale-identities";
        case 5: return "table3-type-i-error";
        case 6: return "table4-split-conformal";
        case 7: return "binary-conformal-exactness";
        case 8: return "defensive-deficit-bound";
        case 9: return "hyperplane-support";
        case 10: return "gaussian-separation";
        case 11: return "classification-matrix";
        case 12: return "determinism";
        default: throw std::out_of_range("criterion_title: id must be in 1..12");
    }
}

namespace {

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

CheckResult bayes_column(const CheckOptions&) {
    const double reference[] = {0.692, 0.659, 0.631, 0.621, 0.616};
    const std::size_t ns[] = {5, 10, 25, 50, 100};
    const double theta = 0.3;
    std::ostringstream d;
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
        const double r = exact_risk(conjugate_rule(ConjugatePredictor::jeffreys(), ns[i]), theta).value();
        ok = ok && within(r, reference[i], 0.002);
        d << "n=" << ns[i] << ":" << format_number(r) << " ";
    }
    // Six-term hand expansion at n = 5.
    double hand = 0.0;
    const double choose[] = {1, 5, 10, 10, 5, 1};
    for (int s = 0; s <= 5; ++s) {
        const double p = (s + 0.5) / 6.0;
        const double w = choose[s] * std::pow(theta, s) * std::pow(1.0 - theta, 5 - s);
        hand += w * -(theta * std::log(p) + (1.0 - theta) * std::log(1.0 - p));
    }
    const double r5 = exact_risk(conjugate_rule(ConjugatePredictor::jeffreys(), 5), theta).value();
    const bool oracle = std::abs(hand - r5) <= 1e-12;
    d << "hand_oracle_n5:" << format_number(hand) << " tol=0.002";
    return {1, criterion_title(1), ok && oracle, d.str()};
}

CheckResult boundary_fraction(const CheckOptions& opt) {
    const double exact = boundary_fraction_exact(5, 0.3);
    ExperimentConfig cfg = table2_config();
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    cfg.sample_sizes = {5};
    const auto rows = run_table2(cfg);
    const double mc = rows.front().boundary_fraction_mc.mean;
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(cfg.replications));
    const bool ok = within(exact, 0.17050, 1e-12) && within(exact, 0.171, 0.001) && within(mc, exact, 3.0 * se);
    std::ostringstream d;
    d << "exact=" << format_number(exact) << " mc=" << format_number(mc) << " 3se=" << format_number(3.0 * se)
      << " B=" << cfg.replications;
    return {2, criterion_title(2), ok, d.str()};
}

CheckResult plugin_dominance(const CheckOptions&) {
    std::vector<double> grid(99);
    for (int i = 0; i < 99; ++i) grid[i] = (i + 1) / 100.0;
    std::size_t cells = 0;
    std::size_t failures = 0;
    for (std::size_t n = 1; n <= 100; ++n) {
        const DominanceCertificate cert = dominance_certificate(n, grid);
        for (const auto& e : cert.entries) {
            ++cells;
            if (!(e.plugin_risk.is_infinite() && e.bayes_risk.is_finite() && e.dominated)) ++failures;
        }
        if (!cert.all_dominated) ++failures;
    }
    std::ostringstream d;
    d << "cells=" << cells << " failures=" << failures;
    return {3, criterion_title(3), failures == 0, d.str()};
}

CheckResult martingales(const CheckOptions&) {
    double bayes = 0.0;
    for (double a : {0.5, 1.0, 2.0, 0.2}) {
        for (double b : {0.5, 1.0, 3.0}) bayes = std::max(bayes, bayes_martingale_deviation({a, b}, 50));
    }
    const double plugin = plugin_self_martingale_deviation(50);
    double ep = 0.0;
    for (double theta0 : {0.5, 0.3}) ep = std::max(ep, eprocess_martingale_deviation(theta0, 30));
    const GaussianModel model(1.0, 0.0, 1.0);
    double gauss = 0.0;
    for (double m : {0.0, 0.5, -1.0, 2.0, -3.0}) gauss = std::max(gauss, gaussian_factor_expectation_deviation(m, model));
    const bool ok = bayes <= 1e-12 && plugin <= 1e-12 && ep <= 1e-12 && gauss <= 1e-8;
    std::ostringstream d;
    d << "bayes=" << format_number(bayes) << " plugin=" << format_number(plugin) << " eprocess=" << format_number(ep)
      << " gaussian=" << format_number(gauss);
    return {4, criterion_title(4), ok, d.str()};
}

CheckResult table3(const CheckOptions& opt) {
    ExperimentConfig cfg = table3_config();
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    const Table3Report r = run_table3(cfg);
    const double e = r.eprocess_rejection.mean;
    const double naive = r.naive_rejection.mean;
    const bool ok = e <= 0.05 && within(e, 0.034, 0.01) && within(naive, 0.169, 0.015);
    std::ostringstream d;
    d << "eprocess=" << format_number(e) << " naive=" << format_number(naive) << " B=" << cfg.replications;
    return {5, criterion_title(5), ok, d.str()};
}

CheckResult table4(const CheckOptions& opt) {
    ExperimentConfig cfg = table4_config();
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    const struct {
        const char* name;
        double quantile;
        double coverage;
    } targets[] = {{"A", 2.43, 0.897}, {"B", 2.43, 0.964}, {"C", 2.10, 0.888}};
    bool ok = true;
    std::ostringstream d;
    for (const auto& t : targets) {
        const Table4Report r = run_table4(ShiftScenario::named(t.name), cfg);
        const bool q_ok = within(r.quantile.mean, t.quantile, 0.05);
        const bool c_ok = within(r.coverage.mean, t.coverage, 0.015);
        ok = ok && q_ok && c_ok;
        d << t.name << ":q=" << format_number(r.quantile.mean) << (q_ok ? "" : "(out)")
          << ",cov=" << format_number(r.coverage.mean) << (c_ok ? "" : "(out)") << " ";
    }
    d << "B=" << cfg.replications;
    return {6, criterion_title(6), ok, d.str()};
}

CheckResult binary_conformal(const CheckOptions&) {
    double margin = 1.0;
    std::size_t cases = 0;
    for (double alpha : {0.05, 0.1, 0.2}) {
        for (std::size_t n = 1; n <= 12; ++n) {
            for (int k = 1; k <= 9; ++k) {
                margin = std::min(margin, exact_binary_coverage(n, 0.1 * k, alpha) - (1.0 - alpha));
                ++cases;
            }
        }
    }
    std::ostringstream d;
    d << "cases=" << cases << " min_margin=" << format_number(margin);
    return {7, criterion_title(7), margin >= -1e-12, d.str()};
}

CheckResult defensive(const CheckOptions& opt) {
    constexpr std::size_t horizon = 1000000;
    std::vector<std::unique_ptr<SequenceSource>> suite;
    suite.push_back(make_iid_source(0.3, opt.seed));
    suite.push_back(make_periodic_source({1, 0, 1, 1, 0}));
    suite.push_back(make_adaptive_adversary());
    bool ok = true;
    std::ostringstream d;
    for (auto& src : suite) {
        const ErrorCurve curve = run_cesaro_experiment(*src, horizon);
        const double err = curve.errors.back();
        ok = ok && curve.max_abs_deficit <= 1.0 && err <= 1e-6;
        d << curve.source << ":max|d|=" << format_number(curve.max_abs_deficit) << ",err=" << format_number(err) << " ";
    }
    d << "T=" << horizon;
    return {8, criterion_title(8), ok, d.str()};
}

CheckResult hyperplane(const CheckOptions& opt) {
    const FiniteParamSpace space({0.3, 0.7}, FiniteParamSpace::Kind::bernoulli);
    constexpr std::size_t n = 10;
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const Prior prior = Prior::two_point(static_cast<double>(k) / 21.0);
        Philox4x32 gen(opt.seed, 0x4850ull + static_cast<std::uint64_t>(k));
        std::vector<PredictiveRule> candidates;
        for (int c = 0; c < 100; ++c) {
            std::vector<double> probs(n + 1);
            for (auto& p : probs) p = uniform_open01(gen);
            candidates.emplace_back(n, std::move(probs));
        }
        worst = std::max(worst, check_hyperplane_support(prior, space, n, candidates).max_violation);
    }
    // Mixture identity R(mix) = lambda R(a) + (1 - lambda) R(b).
    double mix = 0.0;
    const PredictiveRule a = conjugate_rule(ConjugatePredictor::jeffreys(), n);
    const PredictiveRule b = conjugate_rule(ConjugatePredictor::laplace(), n);
    for (double lambda : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        for (double theta : {0.1, 0.3, 0.7}) {
            const double lhs = mixture_risk(a, b, lambda, theta).value();
            const double rhs = lambda * exact_risk(a, theta).value() + (1.0 - lambda) * exact_risk(b, theta).value();
            mix = std::max(mix, std::abs(lhs - rhs));
        }
    }
    std::ostringstream d;
    d << "max_violation=" << format_number(worst) << " mixture_residual=" << format_number(mix);
    return {9, criterion_title(9), worst <= 1e-10 && mix <= 1e-12, d.str()};
}

CheckResult gaussian(const CheckOptions& opt) {
    const GaussianModel model(1.0, 0.0, 1.0);
    GaussianLabConfig cfg;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    const auto report = separation_report(model, cfg);
    const double flat = sample_mean_risk(model, cfg.n);
    const double shrink = shrinkage_risk(model, model.mu0, cfg.n);
    const bool ok = report["all_pass"].get<bool>() && shrink < flat;
    std::ostringstream d;
    d << "mean_constant=" << report["sample_mean_blackwell"]["pass"].get<bool>()
      << " eprocess=" << report["eprocess_anytime_valid"]["pass"].get<bool>()
      << " conformal=" << report["conformal_coverage"]["pass"].get<bool>() << " shrink_at_mu0=" << format_number(shrink)
      << " sigma2_over_n=" << format_number(flat);
    return {10, criterion_title(10), ok, d.str()};
}

CheckResult matrix(const CheckOptions& opt) {
    MatrixConfig cfg;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    const auto cells = derive_matrix(cfg);
    const auto mismatches = compare_with_published(cells);
    std::ostringstream d;
    d << "cells=" << cells.size() << " mismatches=" << mismatches.size();
    for (const auto& m : mismatches) {
        d << " " << procedure_name(m.procedure) << "/" << criterion_name(m.criterion) << ":" << verdict_name(m.derived)
          << "!=" << verdict_name(m.published);
    }
    return {11, criterion_title(11), mismatches.empty(), d.str()};
}

CheckResult determinism(const CheckOptions& opt) {
    const std::vector<std::vector<std::string>> commands = {
        {"riskset"},   {"bernoulli"}, {"eprocess"}, {"conformal"},
        {"defensive"}, {"gaussian"},  {"matrix"},   {"tables", "--which", "all"},
    };
    std::size_t differing = 0;
    std::ostringstream d;
    for (const auto& base : commands) {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--check", "--seed", std::to_string(opt.seed)});
        std::string first;
        for (int pass = 0; pass < 2; ++pass) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = run_cli(args, out, err);
            const std::string bytes = std::to_string(code) + "\n" + out.str() + "\n" + err.str();
            if (pass == 0) {
                first = bytes;
            } else if (bytes != first) {
                ++differing;
                d << base.front() << " differs; ";
            }
        }
    }
    d << "commands=" << commands.size() << " differing=" << differing;
    return {12, criterion_title(12), differing == 0, d.str()};
}

}  // namespace

CheckResult run_criterion(int id, const CheckOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    switch (id) {
        case 1: r = bayes_column(options); break;
        case 2: r = boundary_fraction(options); break;
        case 3: r = plugin_dominance(options); break;
        case 4: r = martingales(options); break;
        case 5: r = table3(options); break;
        case 6: r = table4(options); break;
        case 7: r = binary_conformal(options); break;
        case 8: r = defensive(options); break;
        case 9: r = hyperplane(options); break;
        case 10: r = gaussian(options); break;
        case 11: r = matrix(options); break;
        case 12: r = determinism(options); break;
        default: throw std::out_of_range("run_criterion: id must be in 1..12");
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string format_check_line(const CheckResult& result) {
    return "criterion " + std::to_string(result.id) + " " + (result.passed ? "PASS" : "FAIL") + " " + result.name + ": " +
           result.detail;
}

}  // namespace admlab
