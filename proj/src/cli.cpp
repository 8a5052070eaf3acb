#include "admlab/cli.hpp"

#include "admlab/approachability.hpp"
#include "admlab/bernoulli.hpp"
#include "admlab/checks.hpp"
#include "admlab/classification.hpp"
#include "admlab/conformal.hpp"
#include "admlab/eprocess.hpp"
#include "admlab/gaussian.hpp"
#include "admlab/report.hpp"
#include "admlab/riskset.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace admlab {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::uint64_t seed = 42;
    std::size_t reps = 0;
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
    bool check = false;
    std::size_t threads = 0;

    // riskset
    double theta1 = 0.3;
    double theta2 = 0.7;
    std::size_t n = 10;
    std::size_t grid = kDefaultBoundaryGrid;
    // experiment overrides
    double theta = 0.0;
    double alpha = 0.0;
    std::size_t horizon = 0;
    bool looks_only = false;
    std::string scenario = "all";
    std::string which = "all";
    // defensive
    std::string source = "all";
    std::size_t stride = 0;
    // gaussian
    double sigma = 1.0;
    double mu0 = 0.0;
    double tau = 1.0;
};

struct Given {
    const CLI::Option* seed = nullptr;
    const CLI::Option* reps = nullptr;
    const CLI::Option* theta = nullptr;
    const CLI::Option* alpha = nullptr;
    const CLI::Option* horizon = nullptr;
    const CLI::Option* n = nullptr;
};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

ordered_json json_stat(const SummaryStat& s) {
    return {{"mean", json_number(s.mean)},
            {"mc_se", json_number(s.mc_standard_error)},
            {"count_finite", s.count_finite},
            {"count_infinite", s.count_infinite}};
}

ExperimentConfig build_config(ExperimentConfig base, const Flags& f, const Given& g) {
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw UsageError("cannot open config file '" + f.config_path + "'");
        load_config_file(base, in);
    }
    if (given(g.seed)) base.seed = f.seed;
    if (given(g.reps)) base.replications = f.reps;
    if (given(g.theta)) base.theta = f.theta;
    if (given(g.alpha)) base.alpha = f.alpha;
    if (given(g.horizon)) base.horizon = f.horizon;
    if (f.looks_only) base.monitor_every_step = false;
    base.threads = f.threads;
    try {
        base.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return base;
}

void require_format(const Flags& f, bool allow_text) {
    if (f.format == "csv" || f.format == "json") return;
    if (allow_text && f.format == "text") return;
    throw UsageError("unsupported --format '" + f.format + "'");
}

// --- riskset ---------------------------------------------------------------

std::string cmd_riskset(const Flags& f) {
    require_format(f, false);
    if (!(f.theta1 > 0.0 && f.theta1 < f.theta2 && f.theta2 < 1.0)) {
        throw UsageError("riskset: need 0 < theta1 < theta2 < 1");
    }
    if (f.grid < 3) throw UsageError("riskset: --grid must be >= 3");
    const FiniteParamSpace space({f.theta1, f.theta2}, FiniteParamSpace::Kind::bernoulli);
    const BoundaryTrace trace = trace_lower_boundary(space, f.n, f.grid, f.threads);
    struct Named {
        std::string name;
        RiskVector risks;
    };
    const std::vector<Named> rules = {
        {"P1", risk_vector(conjugate_rule(ConjugatePredictor::jeffreys(), f.n), space)},
        {"Laplace", risk_vector(conjugate_rule(ConjugatePredictor::laplace(), f.n), space)},
        {"plugin", f.n == 0 ? RiskVector{RiskValue::infinity(), RiskValue::infinity()}
                            : risk_vector(plugin_rule(f.n), space)},
    };
    std::ostringstream header;
    header << "theta1=" << format_number(f.theta1) << " theta2=" << format_number(f.theta2) << " n=" << f.n
           << " grid=" << f.grid;
    std::ostringstream os;
    if (f.format == "csv") {
        os << "# riskset " << header.str() << '\n';
        os << "kind,w,r1,r2\n";
        write_trace_csv(os, trace);
        for (const auto& r : rules) os << r.name << ",," << format_risk(r.risks[0]) << ',' << format_risk(r.risks[1]) << '\n';
    } else {
        ordered_json j;
        j["command"] = "riskset";
        j["config"] = header.str();
        ordered_json pts = ordered_json::array();
        for (const auto& p : trace.points) {
            pts.push_back({{"w", json_number(p.prior_weight_first)}, {"r1", json_risk(p.risks[0])}, {"r2", json_risk(p.risks[1])}});
        }
        j["boundary"] = pts;
        ordered_json named = ordered_json::array();
        for (const auto& r : rules) named.push_back({{"name", r.name}, {"r1", json_risk(r.risks[0])}, {"r2", json_risk(r.risks[1])}});
        j["rules"] = named;
        os << j.dump(2) << '\n';
    }
    return os.str();
}

// --- tables ----------------------------------------------------------------

void emit_table2(std::ostream& os, ordered_json* j, const ExperimentConfig& cfg) {
    const auto rows = run_table2(cfg);
    if (!j) {
        write_table2_csv(os, cfg, rows);
        return;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"bayes_risk_mc", json_stat(r.bayes_risk_mc)},
                       {"mle_risk_mc_clamped", json_stat(r.mle_risk_mc_clamped)},
                       {"excess", json_number(r.excess)},
                       {"boundary_fraction_mc", json_stat(r.boundary_fraction_mc)},
                       {"bayes_risk_exact", json_number(r.bayes_risk_exact)},
                       {"plugin_risk_exact", json_risk(r.plugin_risk_exact)},
                       {"boundary_fraction_exact", json_number(r.boundary_fraction_exact)}});
    }
    (*j)["table2"] = {{"config", cfg.to_string()}, {"rows", arr}};
}

void emit_table3(std::ostream& os, ordered_json* j, const ExperimentConfig& cfg) {
    const Table3Report r = run_table3(cfg);
    if (!j) {
        write_table3_csv(os, cfg, r);
        return;
    }
    (*j)["table3"] = {{"config", cfg.to_string()},
                      {"eprocess", json_stat(r.eprocess_rejection)},
                      {"naive_peeking", json_stat(r.naive_rejection)},
                      {"nominal", json_number(cfg.alpha)}};
}

std::vector<std::string> scenarios_for(const std::string& which) {
    if (which == "all") return {"A", "B", "C"};
    ShiftScenario::named(which);
    return {which};
}

void emit_table4(std::ostream& os, ordered_json* j, const ExperimentConfig& cfg, const std::string& which) {
    std::vector<Table4Report> reports;
    for (const auto& name : scenarios_for(which)) reports.push_back(run_table4(ShiftScenario::named(name), cfg));
    if (!j) {
        write_table4_csv(os, cfg, reports);
        return;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        const ShiftScenario sc = ShiftScenario::named(r.scenario);
        arr.push_back({{"scenario", r.scenario},
                       {"calibration", design_name(sc.cal_design)},
                       {"test", design_name(sc.test_design)},
                       {"quantile", json_stat(r.quantile)},
                       {"coverage", json_stat(r.coverage)},
                       {"half_width", json_stat(r.half_width)}});
    }
    (*j)["table4"] = {{"config", cfg.to_string()}, {"rows", arr}};
}

std::string finish(std::ostringstream& os, ordered_json* j) {
    if (j) os << j->dump(2) << '\n';
    return os.str();
}

std::string cmd_bernoulli(const Flags& f, const Given& g) {
    require_format(f, false);
    const ExperimentConfig cfg = build_config(table2_config(), f, g);
    std::ostringstream os;
    ordered_json j;
    ordered_json* jp = f.format == "json" ? &j : nullptr;
    emit_table2(os, jp, cfg);
    return finish(os, jp);
}

std::string cmd_eprocess(const Flags& f, const Given& g) {
    require_format(f, false);
    const ExperimentConfig cfg = build_config(table3_config(), f, g);
    std::ostringstream os;
    ordered_json j;
    ordered_json* jp = f.format == "json" ? &j : nullptr;
    emit_table3(os, jp, cfg);
    return finish(os, jp);
}

std::string cmd_conformal(const Flags& f, const Given& g) {
    require_format(f, false);
    const ExperimentConfig cfg = build_config(table4_config(), f, g);
    try {
        scenarios_for(f.scenario);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::ostringstream os;
    ordered_json j;
    ordered_json* jp = f.format == "json" ? &j : nullptr;
    emit_table4(os, jp, cfg, f.scenario);
    return finish(os, jp);
}

std::string cmd_tables(const Flags& f, const Given& g) {
    require_format(f, false);
    if (f.which != "2" && f.which != "3" && f.which != "4" && f.which != "all") {
        throw UsageError("tables: --which must be 2, 3, 4 or all");
    }
    const bool all = f.which == "all";
    std::ostringstream os;
    ordered_json j;
    ordered_json* jp = f.format == "json" ? &j : nullptr;
    if (all || f.which == "2") emit_table2(os, jp, build_config(table2_config(), f, g));
    if (all || f.which == "3") emit_table3(os, jp, build_config(table3_config(), f, g));
    if (all || f.which == "4") emit_table4(os, jp, build_config(table4_config(), f, g), "all");
    return finish(os, jp);
}

// --- defensive -------------------------------------------------------------

std::string cmd_defensive(const Flags& f, const Given& g) {
    require_format(f, false);
    const std::size_t horizon = given(g.horizon) ? f.horizon : 10000;
    if (horizon == 0) throw UsageError("defensive: --horizon must be >= 1");
    const double theta = given(g.theta) ? f.theta : 0.3;
    if (!(theta > 0.0 && theta < 1.0)) throw UsageError("defensive: --theta must lie in (0,1)");
    std::vector<std::string> names;
    if (f.source == "all") {
        names = {"iid", "periodic", "adversary", "constant1"};
    } else if (f.source == "iid" || f.source == "periodic" || f.source == "adversary" || f.source == "constant1" ||
               f.source == "constant0") {
        names = {f.source};
    } else {
        throw UsageError("defensive: unknown --source '" + f.source + "'");
    }
    const std::size_t stride = f.stride > 0 ? f.stride : std::max<std::size_t>(1, horizon / 100);
    std::vector<ErrorCurve> curves;
    for (const auto& name : names) {
        std::unique_ptr<SequenceSource> src;
        if (name == "iid") src = make_iid_source(theta, f.seed);
        else if (name == "periodic") src = make_periodic_source({1, 1, 0});
        else if (name == "adversary") src = make_adaptive_adversary();
        else src = make_constant_source(name == "constant1" ? 1 : 0);
        curves.push_back(run_cesaro_experiment(*src, horizon));
    }
    std::ostringstream os;
    std::ostringstream header;
    header << "seed=" << f.seed << " theta=" << format_number(theta) << " horizon=" << horizon << " stride=" << stride;
    if (f.format == "csv") {
        os << "# defensive " << header.str() << '\n';
        os << "source,t,err\n";
        for (const auto& c : curves) write_error_curve_csv(os, c, stride);
        os << "# summary source,max_abs_deficit,final_err\n";
        for (const auto& c : curves) {
            os << "# " << c.source << ',' << format_number(c.max_abs_deficit) << ',' << format_number(c.errors.back()) << '\n';
        }
    } else {
        ordered_json j;
        j["command"] = "defensive";
        j["config"] = header.str();
        ordered_json arr = ordered_json::array();
        for (const auto& c : curves) {
            ordered_json pts = ordered_json::array();
            for (std::size_t i = 0; i < c.errors.size(); ++i) {
                const std::size_t t = i + 1;
                if (t % stride == 0 || t == c.errors.size()) pts.push_back({{"t", t}, {"err", json_number(c.errors[i])}});
            }
            arr.push_back({{"source", c.source},
                           {"max_abs_deficit", json_number(c.max_abs_deficit)},
                           {"final_err", json_number(c.errors.back())},
                           {"curve", pts}});
        }
        j["curves"] = arr;
        os << j.dump(2) << '\n';
    }
    return os.str();
}

// --- gaussian --------------------------------------------------------------

void flatten(std::ostream& os, const std::string& prefix, const ordered_json& j) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(os, prefix.empty() ? it.key() : prefix + "." + it.key(), *it);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(os, prefix + "[" + std::to_string(i) + "]", j[i]);
    } else if (j.is_number_float()) {
        os << prefix << ',' << format_number(j.get<double>()) << '\n';
    } else if (j.is_string()) {
        os << prefix << ",\"" << j.get<std::string>() << "\"\n";
    } else {
        os << prefix << ',' << j.dump() << '\n';
    }
}

std::string cmd_gaussian(const Flags& f, const Given& g) {
    require_format(f, false);
    GaussianLabConfig cfg;
    cfg.seed = f.seed;
    cfg.threads = f.threads;
    if (given(g.reps)) cfg.risk_replications = f.reps;
    if (given(g.n)) cfg.n = f.n;
    if (given(g.alpha)) cfg.alpha = f.alpha;
    if (cfg.risk_replications < 2) throw UsageError("gaussian: --reps must be >= 2");
    if (cfg.n < 1) throw UsageError("gaussian: --n must be >= 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("gaussian: --alpha must lie in (0,1)");
    std::optional<GaussianModel> model;
    try {
        model.emplace(f.sigma, f.mu0, f.tau);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const ordered_json report = separation_report(*model, cfg);
    std::ostringstream os;
    if (f.format == "csv") {
        os << "# gaussian seed=" << cfg.seed << " n=" << cfg.n << " sigma=" << format_number(f.sigma)
           << " mu0=" << format_number(f.mu0) << " tau=" << format_number(f.tau) << '\n';
        os << "key,value\n";
        flatten(os, "", report);
    } else {
        os << report.dump(2) << '\n';
    }
    return os.str();
}

// --- matrix ----------------------------------------------------------------

std::string cmd_matrix(const Flags& f, const Given& g, bool& gate_failed, std::string& gate_report) {
    require_format(f, true);
    MatrixConfig cfg;
    cfg.seed = f.seed;
    cfg.threads = f.threads;
    if (given(g.reps)) cfg.replications = f.reps;
    if (given(g.alpha)) cfg.alpha = f.alpha;
    if (given(g.horizon)) cfg.caa_horizon = f.horizon;
    if (cfg.replications < 2) throw UsageError("matrix: --reps must be >= 2");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("matrix: --alpha must lie in (0,1)");
    if (cfg.caa_horizon < 1) throw UsageError("matrix: --horizon must be >= 1");
    const auto cells = derive_matrix(cfg);
    const auto mismatches = compare_with_published(cells);
    gate_failed = !mismatches.empty();
    std::ostringstream gr;
    for (const auto& m : mismatches) {
        gr << "matrix mismatch " << procedure_name(m.procedure) << '/' << criterion_name(m.criterion) << ": derived "
           << verdict_name(m.derived) << ", published " << verdict_name(m.published) << '\n';
    }
    gate_report = gr.str();
    std::ostringstream os;
    if (f.format == "text") {
        render_matrix_text(os, cells);
    } else if (f.format == "csv") {
        os << "# matrix seed=" << cfg.seed << " reps=" << cfg.replications << " alpha=" << format_number(cfg.alpha)
           << " caa_horizon=" << cfg.caa_horizon << '\n';
        render_matrix_csv(os, cells);
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& c : cells) {
            arr.push_back({{"procedure", procedure_name(c.procedure)},
                           {"criterion", criterion_name(c.criterion)},
                           {"verdict", verdict_name(c.verdict)},
                           {"footnote", c.footnote},
                           {"check", c.evidence.check},
                           {"measured", json_number(c.evidence.measured)},
                           {"threshold", c.evidence.threshold},
                           {"note", c.evidence.note}});
        }
        ordered_json j;
        j["command"] = "matrix";
        j["config"] = {{"seed", cfg.seed}, {"reps", cfg.replications}, {"alpha", cfg.alpha}, {"caa_horizon", cfg.caa_horizon}};
        j["cells"] = arr;
        j["mismatches"] = mismatches.size();
        os << j.dump(2) << '\n';
    }
    return os.str();
}

std::vector<int> criteria_for(const std::string& command, const std::string& which) {
    if (command == "riskset") return {9};
    if (command == "bernoulli") return {1, 2, 3, 4};
    if (command == "eprocess") return {4, 5};
    if (command == "conformal") return {6, 7};
    if (command == "defensive") return {8};
    if (command == "gaussian") return {10};
    if (command == "matrix") return {11};
    if (which == "2") return {1, 2};
    if (which == "3") return {5};
    if (which == "4") return {6};
    return {1, 2, 5, 6};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"admlab: admissibility geometry laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    Given g;
    g.seed = app.add_option("--seed", f.seed, "RNG seed");
    g.reps = app.add_option("--reps", f.reps, "Monte-Carlo replications");
    app.add_option("--format", f.format, "csv or json (matrix also accepts text)");
    app.add_option("--out", f.out_path, "write output to this file instead of stdout");
    app.add_option("--config", f.config_path, "flat key = value config file");
    app.add_flag("--check", f.check, "evaluate the acceptance criteria for this command");
    app.add_option("--threads", f.threads, "worker threads (0 = all cores); never changes results");

    auto* riskset = app.add_subcommand("riskset", "lower-boundary trace for a two-point parameter space");
    riskset->add_option("--theta1", f.theta1, "smaller parameter value");
    riskset->add_option("--theta2", f.theta2, "larger parameter value");
    g.n = riskset->add_option("--n", f.n, "sample size");
    riskset->add_option("--grid", f.grid, "prior-weight grid size");

    auto* bernoulli = app.add_subcommand("bernoulli", "Bayes vs plug-in next-step risk (Table 2 layout)");
    g.theta = bernoulli->add_option("--theta", f.theta, "true success probability");

    auto* eprocess = app.add_subcommand("eprocess", "e-process vs naive peeking under the null (Table 3 layout)");
    eprocess->add_option("--theta", f.theta, "null success probability");
    g.alpha = eprocess->add_option("--alpha", f.alpha, "level");
    g.horizon = eprocess->add_option("--horizon", f.horizon, "observations per path");
    eprocess->add_flag("--looks-only", f.looks_only, "monitor the e-process at the looks only");

    auto* conformal = app.add_subcommand("conformal", "split conformal under covariate shift (Table 4 layout)");
    conformal->add_option("--scenario", f.scenario, "A, B, C or all");
    conformal->add_option("--alpha", f.alpha, "miscoverage level");

    auto* defensive = app.add_subcommand("defensive", "Cesaro calibration curves of the defensive forecaster");
    defensive->add_option("--source", f.source, "iid, periodic, adversary, constant1, constant0 or all");
    defensive->add_option("--horizon", f.horizon, "rounds");
    defensive->add_option("--theta", f.theta, "iid success probability");
    defensive->add_option("--stride", f.stride, "emit every stride-th round");

    auto* gaussian = app.add_subcommand("gaussian", "Gaussian separation report");
    gaussian->add_option("--n", f.n, "sample size");
    gaussian->add_option("--sigma", f.sigma, "noise sd");
    gaussian->add_option("--mu0", f.mu0, "prior center and null mean");
    gaussian->add_option("--tau", f.tau, "prior sd");
    gaussian->add_option("--alpha", f.alpha, "conformal miscoverage level");

    auto* matrix = app.add_subcommand("matrix", "procedures-by-criteria classification with evidence");
    matrix->add_option("--alpha", f.alpha, "level for set-valued procedures");
    matrix->add_option("--horizon", f.horizon, "rounds for the Cesaro checks");

    auto* tables = app.add_subcommand("tables", "Monte-Carlo tables");
    tables->add_option("--which", f.which, "2, 3, 4 or all");

    // Subcommand-local options that share a Flags field still count as given.
    auto count_any = [&](const std::string& name) -> const CLI::Option* {
        for (auto* sub : app.get_subcommands()) {
            if (auto* opt = sub->get_option_no_throw(name); opt && opt->count() > 0) return opt;
        }
        if (auto* opt = app.get_option_no_throw(name); opt && opt->count() > 0) return opt;
        return nullptr;
    };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    g.theta = count_any("--theta");
    g.alpha = count_any("--alpha");
    g.horizon = count_any("--horizon");
    g.n = count_any("--n");

    const std::string command = app.get_subcommands().front()->get_name();
    std::string body;
    bool gate_failed = false;
    std::string gate_report;
    try {
        if (command == "riskset") body = cmd_riskset(f);
        else if (command == "bernoulli") body = cmd_bernoulli(f, g);
        else if (command == "eprocess") body = cmd_eprocess(f, g);
        else if (command == "conformal") body = cmd_conformal(f, g);
        else if (command == "defensive") body = cmd_defensive(f, g);
        else if (command == "gaussian") body = cmd_gaussian(f, g);
        else if (command == "matrix") body = cmd_matrix(f, g, gate_failed, gate_report);
        else body = cmd_tables(f, g);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    std::string check_report;
    bool check_failed = false;
    if (f.check) {
        const CheckOptions opt{f.seed, f.threads};
        for (int id : criteria_for(command, f.which)) {
            const CheckResult r = run_criterion(id, opt);
            check_failed = check_failed || !r.passed;
            check_report += format_check_line(r) + "\n";
        }
    }

    if (f.out_path.empty()) {
        out << body;
    } else {
        std::ofstream file(f.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << f.out_path << "'\n";
            return 2;
        }
        file << body;
    }
    err << gate_report << check_report;
    return gate_failed || check_failed ? 1 : 0;
}

}  // namespace admlab
