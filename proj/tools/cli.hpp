#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recteig::cli {

enum ExitCode { ok = 0, bad_input = 2, solver_failure = 3 };

/// Runs one command line (without the program name). Diagnostics go to
/// `err`; reports go to --out, or to `out` when --out is absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recteig::cli
