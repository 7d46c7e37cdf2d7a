#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fockangle::cli {

enum ExitCode : int { ok = 0, input_error = 2, budget_error = 3, contract_error = 4 };

/// Runs one command. `args` excludes the program name. The report goes to
/// `out` unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fockangle::cli
