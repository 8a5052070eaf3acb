#pragma once

#include "admlab/risk_value.hpp"
#include "admlab/rng.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace admlab {

/// Shared Monte-Carlo configuration. Each experiment reads the fields it
/// needs; the rest ride along so that every report embeds the full config.
struct ExperimentConfig {
    std::uint64_t seed = 42;
    std::size_t replications = 10000;
    double theta = 0.3;
    double alpha = 0.05;
    std::vector<std::size_t> sample_sizes{5, 10, 25, 50, 100};
    std::size_t horizon = 200;
    std::vector<std::size_t> looks{10, 20, 50, 100, 200};
    double clamp_epsilon = 1e-3;
    bool monitor_every_step = true;
    std::size_t n_cal = 500;
    std::size_t n_test = 2000;
    std::string scenario = "A";
    /// Worker count; 0 means hardware concurrency. Never affects results.
    std::size_t threads = 0;

    /// Throws std::invalid_argument on invalid combinations (B = 0, etc.).
    void validate() const;

    /// Stable "key=value key=value ..." rendering. `threads` is omitted
    /// because it cannot change any output.
    std::string to_string() const;
};

ExperimentConfig table2_config();
ExperimentConfig table3_config();
ExperimentConfig table4_config();

/// Applies one `key = value` setting. Throws std::invalid_argument on an
/// unknown key or unparsable value.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads a flat key-value file: `key = value` per line, `#` comments.
void load_config_file(ExperimentConfig& config, std::istream& in);

/// Independent deterministic stream for one replication.
inline Philox4x32 derive_substream(std::uint64_t seed, std::uint64_t replication_index) noexcept {
    return Philox4x32(seed, replication_index);
}

/// Mean and Monte-Carlo standard error over the finite entries; infinite
/// entries are counted, never averaged.
struct SummaryStat {
    double mean = 0.0;
    double mc_standard_error = 0.0;
    std::size_t count_finite = 0;
    std::size_t count_infinite = 0;
};

/// Throws std::invalid_argument on an empty list.
SummaryStat summarize(std::span<const RiskValue> values);
SummaryStat summarize(std::span<const double> values);

/// Pairwise (cascade) summation; result is independent of how the work that
/// produced `values` was scheduled.
double pairwise_sum(std::span<const double> values) noexcept;

std::size_t resolve_threads(std::size_t requested) noexcept;

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns
/// the results in index order. The first exception thrown by a task is
/// rethrown after all workers finish.
template <typename Fn>
auto parallel_map(std::size_t count, std::size_t threads, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<Result> out(count);
    const std::size_t workers = std::min(resolve_threads(threads), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace admlab
