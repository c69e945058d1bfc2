#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace povmkit::cli {

/// Runs one CLI invocation. Exit codes: 0 success, 1 the analysis verdict is
/// negative (validation fails, POVM not extremal), 2 input or format error.
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
        std::ostream &err);

}  // namespace povmkit::cli
