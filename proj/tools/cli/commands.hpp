#pragma once

#include <ostream>

#include "config.hpp"

namespace betaens::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2, kVerificationFailed = 3 };

/// Writes the output document of a data subcommand (everything but verify)
/// to `out`. Throws ParameterError or NumericalError.
void execute(const RunConfig& config, std::ostream& out);

/// Validation, execution, file output and exit-code mapping.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv);

}  // namespace betaens::cli
