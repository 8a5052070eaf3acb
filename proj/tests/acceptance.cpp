// Acceptance runner: one line per criterion. With no arguments runs 1..12;
// otherwise runs the listed ids. Exit status is nonzero if any listed
// criterion fails.
#include "admlab/checks.hpp"

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    if (ids.empty()) {
        for (int id = 1; id <= admlab::kCriterionCount; ++id) ids.push_back(id);
    }
    bool all = true;
    for (int id : ids) {
        try {
            const admlab::CheckResult r = admlab::run_criterion(id, {});
            all = all && r.passed;
            char timing[32];
            std::snprintf(timing, sizeof timing, " [%.2fs]", r.seconds);
            std::cout << admlab::format_check_line(r) << timing << std::endl;
        } catch (const std::exception& e) {
            all = false;
            std::cout << "criterion " << id << " FAIL error: " << e.what() << std::endl;
        }
    }
    return all ? 0 : 1;
}
