#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace admlab {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // deterministic: measured values and thresholds only
    double seconds = 0.0;  // wall time, never part of rendered check output
};

struct CheckOptions {
    std::uint64_t seed = 42;
    std::size_t threads = 0;
};

inline constexpr int kCriterionCount = 12;

std::string criterion_title(int id);

/// Runs acceptance criterion `id` (1..12). Throws std::out_of_range for
/// other ids.
CheckResult run_criterion(int id, const CheckOptions& options);

/// "criterion <id> <PASS|FAIL> <name>: <detail>"
std::string format_check_line(const CheckResult& result);

}  // namespace admlab
