#pragma once

#include <optional>
#include <ostream>

namespace kleinian2 {

/// Entry point of the command-line tool. JSON results go to `out`; usage
/// text and parse diagnostics go to `err`. Returns the process exit status:
/// 0 success, 1 verification failure, 2 input or validation error.
/// --tol beats KLEINIAN2_TOL, which beats the built-in default.
double resolve_tol_id(std::optional<double> flag, const char* env);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kleinian2
