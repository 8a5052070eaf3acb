#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace admlab {

/// Command-line entry point without argv[0]. Returns 0 on success, 1 when a
/// regression gate or --check criterion fails, 2 on usage errors. Output is
/// produced in full before anything is written, so a usage error never
/// leaves a partial file behind.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace admlab
