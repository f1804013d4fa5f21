#pragma once

#include <iosfwd>

namespace threept::cli {

/// Exit codes: 0 feasible / success, 1 infeasible / suite failure, 2 input error,
/// 3 construct produced a plan that failed its own verification (or another internal check failed).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace threept::cli
