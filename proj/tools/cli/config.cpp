#include "config.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>

#include "betaens/error.hpp"
#include "betaens/version.hpp"

namespace betaens::cli {

std::vector<double> RunConfig::effective_thetas() const {
  if (!thetas.empty()) return thetas;
  if (subcommand == Subcommand::diagnostics) return {0.5, 1.5};
  if (ensemble == EnsembleKind::circular) return {0.0, std::numbers::pi / 2};
  return {std::numbers::pi / 2};
}

std::vector<std::size_t> RunConfig::effective_n_grid() const {
  if (!n_grid.empty()) return n_grid;
  return {256, 1024, 4096};
}

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::sample: return "sample";
    case Subcommand::count: return "count";
    case Subcommand::fluctuations: return "fluctuations";
    case Subcommand::diagnostics: return "diagnostics";
    case Subcommand::moments: return "moments";
    case Subcommand::verify: return "verify";
  }
  return "?";
}

std::string to_string(EnsembleKind k) { return k == EnsembleKind::circular ? "circular" : "jacobi"; }
std::string to_string(Normalization n) { return n == Normalization::count ? "theorem" : "phase"; }
std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

void validate(const RunConfig& c) {
  if (c.subcommand == Subcommand::verify) return;
  c.spec().validate();
  detail::require(c.trials >= 1, "--trials must be >= 1");
  const auto thetas = c.effective_thetas();
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    detail::require(std::isfinite(thetas[j]), "--thetas must be finite numbers");
    if (j > 0) detail::require(thetas[j - 1] < thetas[j], "--thetas must be sorted and distinct");
  }
  const double pi = std::numbers::pi;
  switch (c.subcommand) {
    case Subcommand::count:
    case Subcommand::fluctuations:
      if (c.ensemble == EnsembleKind::circular) {
        detail::require(thetas.size() >= 2, "circular runs need at least two --thetas (arc endpoints)");
        detail::require(-pi < thetas.front() && thetas.back() < pi,
                        "circular --thetas must lie in (-pi, pi)");
      } else {
        detail::require(0.0 < thetas.front() && thetas.back() < pi,
                        "jacobi --thetas must lie in (0, pi)");
      }
      if (c.subcommand == Subcommand::fluctuations) {
        detail::require(c.n >= 2, "fluctuations need --n >= 2 (normalization divides by log n)");
      }
      break;
    case Subcommand::diagnostics:
      detail::require(thetas.size() >= 2, "diagnostics need two --thetas (theta1, theta2)");
      for (auto n : c.effective_n_grid()) detail::require(n >= 2, "--n-grid values must be >= 2");
      break;
    case Subcommand::moments:
      detail::require(c.coefficients >= 1, "--coefficients must be >= 1");
      detail::require(c.trials >= 2, "moments need --trials >= 2 draws per coefficient");
      break;
    default:
      break;
  }
  if (!c.plot_script_path.empty()) {
    detail::require(c.subcommand == Subcommand::fluctuations && c.format == OutputFormat::csv &&
                        !c.out_path.empty() && c.out_path != "-",
                    "--emit-plot-script needs fluctuations with CSV written to --out");
  }
}

namespace {

void add_common(CLI::App* sub, RunConfig& c, bool with_thetas) {
  const std::map<std::string, EnsembleKind> kinds{{"circular", EnsembleKind::circular},
                                                  {"jacobi", EnsembleKind::jacobi}};
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                    {"json", OutputFormat::json}};
  sub->add_option("--ensemble", c.ensemble, "circular or jacobi")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  sub->add_option("--n", c.n, "number of points");
  sub->add_option("--beta", c.beta, "inverse temperature (> 0)");
  sub->add_option("--a", c.a, "Jacobi edge exponent a (> 0)");
  sub->add_option("--b", c.b, "Jacobi edge exponent b (> 0)");
  if (with_thetas) {
    sub->add_option("--thetas", c.thetas, "comma-separated sorted angles")->delimiter(',');
  }
  sub->add_option("--trials", c.trials, "independent samples");
  sub->add_option("--seed", c.seed, "64-bit master seed");
  sub->add_option("--out", c.out_path, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json (default from --out extension, else csv)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub->add_option("--parallel", c.parallel,
                  "worker threads (0 = all cores; BETA_ENSEMBLE_THREADS overrides)");
}

}  // namespace

ParseOutcome parse_command_line(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Monte Carlo sampler and verifier for circular and Jacobi beta ensembles",
               "beta_ensemble"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "write point configurations");
  add_common(sample, c, false);
  auto* count = app.add_subcommand("count", "write per-trial counts");
  add_common(count, c, true);
  auto* fluct = app.add_subcommand("fluctuations", "normalized counts and their summary");
  add_common(fluct, c, true);
  const std::map<std::string, Normalization> norms{{"theorem", Normalization::count},
                                                   {"phase", Normalization::phase}};
  fluct->add_option("--normalization", c.normalization, "theorem (counts) or phase")
      ->transform(CLI::CheckedTransformer(norms, CLI::ignore_case));
  fluct->add_option("--emit-plot-script", c.plot_script_path, "write a gnuplot script here");
  auto* diag = app.add_subcommand("diagnostics", "martingale-CLT hypothesis statistics over an n-grid");
  add_common(diag, c, true);
  diag->add_option("--n-grid", c.n_grid, "comma-separated n values")->delimiter(',');
  auto* moments = app.add_subcommand("moments", "closed-form coefficient moments against Monte Carlo");
  add_common(moments, c, false);
  moments->add_option("--coefficients", c.coefficients, "coefficients k = 0..K-1 to tabulate");
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--quick", c.quick, "acceptance criteria only");
  verify->add_option("--seed", c.seed, "64-bit master seed");
  verify->add_option("--out", c.out_path, "also write results here");
  verify->add_option("--parallel", c.parallel, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return {std::nullopt, code == 0 ? 0 : 1};
  }

  const std::pair<CLI::App*, Subcommand> subs[] = {
      {sample, Subcommand::sample},       {count, Subcommand::count},
      {fluct, Subcommand::fluctuations},  {diag, Subcommand::diagnostics},
      {moments, Subcommand::moments},     {verify, Subcommand::verify}};
  for (const auto& [app_ptr, which] : subs) {
    if (app_ptr->parsed()) {
      c.subcommand = which;
      if (app_ptr->get_option_no_throw("--format") == nullptr ||
          app_ptr->get_option("--format")->count() == 0) {
        const auto& p = c.out_path;
        if (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0) c.format = OutputFormat::json;
      }
    }
  }
  return {c, 0};
}

}  // namespace betaens::cli
