#include "admlab/harness.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace admlab {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (in.fail() || !in.eof()) {
        throw std::invalid_argument("config: cannot parse value '" + text + "' for key '" + key + "'");
    }
    return value;
}

std::vector<std::size_t> parse_size_list(const std::string& key, const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(parse_number<std::size_t>(key, trim(item)));
    }
    if (out.empty()) throw std::invalid_argument("config: empty list for key '" + key + "'");
    return out;
}

std::string join(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

std::string format_g(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

void ExperimentConfig::validate() const {
    if (replications == 0) throw std::invalid_argument("config: reps must be >= 1");
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("config: theta must lie in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("config: alpha must lie in (0,1)");
    if (!(clamp_epsilon > 0.0 && clamp_epsilon < 0.5)) {
        throw std::invalid_argument("config: clamp_eps must lie in (0,0.5)");
    }
    if (horizon == 0) throw std::invalid_argument("config: horizon must be >= 1");
    if (n_cal == 0 || n_test == 0) throw std::invalid_argument("config: n_cal and n_test must be >= 1");
    if (!std::is_sorted(looks.begin(), looks.end())) throw std::invalid_argument("config: looks must be ascending");
}

std::string ExperimentConfig::to_string() const {
    std::ostringstream os;
    os << "seed=" << seed << " reps=" << replications << " theta=" << format_g(theta)
       << " alpha=" << format_g(alpha) << " n_list=" << join(sample_sizes) << " horizon=" << horizon
       << " looks=" << join(looks) << " clamp_eps=" << format_g(clamp_epsilon)
       << " monitor_every_step=" << (monitor_every_step ? 1 : 0) << " n_cal=" << n_cal
       << " n_test=" << n_test << " scenario=" << scenario;
    return os.str();
}

ExperimentConfig table2_config() {
    ExperimentConfig c;
    c.theta = 0.3;
    return c;
}

ExperimentConfig table3_config() {
    ExperimentConfig c;
    c.theta = 0.5;
    c.alpha = 0.05;
    return c;
}

ExperimentConfig table4_config() {
    ExperimentConfig c;
    c.alpha = 0.1;
    return c;
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "reps") c.replications = parse_number<std::size_t>(key, value);
    else if (key == "theta") c.theta = parse_number<double>(key, value);
    else if (key == "alpha") c.alpha = parse_number<double>(key, value);
    else if (key == "n_list") c.sample_sizes = parse_size_list(key, value);
    else if (key == "horizon") c.horizon = parse_number<std::size_t>(key, value);
    else if (key == "looks") c.looks = parse_size_list(key, value);
    else if (key == "clamp_eps") c.clamp_epsilon = parse_number<double>(key, value);
    else if (key == "monitor_every_step") c.monitor_every_step = parse_number<int>(key, value) != 0;
    else if (key == "n_cal") c.n_cal = parse_number<std::size_t>(key, value);
    else if (key == "n_test") c.n_test = parse_number<std::size_t>(key, value);
    else if (key == "scenario") c.scenario = value;
    else if (key == "threads") c.threads = parse_number<std::size_t>(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void load_config_file(ExperimentConfig& config, std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(line_no) + " lacks '='");
        }
        apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    }
}

double pairwise_sum(std::span<const double> values) noexcept {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SummaryStat summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty list");
    SummaryStat out;
    out.count_finite = values.size();
    const double n = static_cast<double>(values.size());
    out.mean = pairwise_sum(values) / n;
    if (values.size() > 1) {
        std::vector<double> dev(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - out.mean) * (values[i] - out.mean);
        const double var = pairwise_sum(dev) / (n - 1.0);
        out.mc_standard_error = std::sqrt(var / n);
    }
    return out;
}

SummaryStat summarize(std::span<const RiskValue> values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty list");
    std::vector<double> finite;
    finite.reserve(values.size());
    for (const auto& v : values) {
        if (v.is_finite()) finite.push_back(v.value());
    }
    SummaryStat out;
    if (!finite.empty()) out = summarize(std::span<const double>(finite));
    out.count_infinite = values.size() - finite.size();
    out.count_finite = finite.size();
    return out;
}

std::size_t resolve_threads(std::size_t requested) noexcept {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace admlab
