#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "betaens/ensembles.hpp"
#include "betaens/statistics.hpp"

namespace betaens::cli {

enum class Subcommand { sample, count, fluctuations, diagnostics, moments, verify };
enum class OutputFormat { csv, json };

struct RunConfig {
  Subcommand subcommand = Subcommand::fluctuations;
  EnsembleKind ensemble = EnsembleKind::circular;
  std::size_t n = 1024;
  double beta = 2.0;
  double a = 1.0;
  double b = 1.0;
  std::vector<double> thetas;  // empty: per-ensemble default
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string out_path;  // empty or "-": stdout
  OutputFormat format = OutputFormat::csv;
  Normalization normalization = Normalization::count;
  std::size_t parallel = 0;  // 0: hardware concurrency
  std::vector<std::size_t> n_grid;  // diagnostics
  std::size_t coefficients = 4;     // moments: k = 0..coefficients−1
  std::string plot_script_path;
  bool quick = false;  // verify: acceptance criteria only

  EnsembleSpec spec() const { return {ensemble, n, beta, a, b}; }
  /// thetas, or the default for the ensemble when none were given.
  std::vector<double> effective_thetas() const;
  std::vector<std::size_t> effective_n_grid() const;
};

std::string to_string(Subcommand s);
std::string to_string(EnsembleKind k);
std::string to_string(Normalization n);
std::string to_string(OutputFormat f);

/// Throws ParameterError with an actionable message.
void validate(const RunConfig& config);

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = 0;  // meaningful when config is empty (help or bad flags)
};

ParseOutcome parse_command_line(int argc, const char* const* argv);

}  // namespace betaens::cli
