#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "../verify/acceptance.hpp"
#include "betaens/diagnostics.hpp"
#include "betaens/error.hpp"
#include "betaens/parallel.hpp"
#include "output.hpp"

namespace betaens::cli {
namespace {

using nlohmann::json;

std::vector<std::string> row_prefix(std::size_t trial) { return {std::to_string(trial)}; }

void write_json(std::ostream& out, const RunConfig& c, json report) {
  json doc;
  doc["config"] = config_to_json(c);
  doc["report"] = std::move(report);
  doc["provenance"] = provenance_json(c);
  out << doc.dump(2) << '\n';
}

void run_sample(const RunConfig& c, std::ostream& out) {
  const auto spec = c.spec();
  std::vector<std::vector<double>> configs(c.trials);
  parallel_for(c.trials, resolve_worker_count(c.parallel), [&](std::size_t i) {
    auto rng = RandomStream::for_trial(c.seed, i);
    configs[i] = sample_points(spec, rng).points;
  });
  if (c.format == OutputFormat::json) {
    write_json(out, c, {{"coordinate", c.ensemble == EnsembleKind::circular ? "angle" : "x"},
                        {"samples", configs}});
    return;
  }
  write_csv_provenance(out, c);
  write_csv_row(out, {"trial", "index", "point"});
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (std::size_t j = 0; j < configs[i].size(); ++j) {
      write_csv_row(out, {std::to_string(i), std::to_string(j), format_double(configs[i][j])});
    }
  }
}

std::vector<std::string> column_header(EnsembleKind kind) {
  if (kind == EnsembleKind::circular) return {"trial", "theta_lo", "theta_hi"};
  return {"trial", "theta"};
}

std::vector<std::string> column_fields(EnsembleKind kind, std::size_t trial,
                                       const StatisticColumn& col) {
  auto f = row_prefix(trial);
  if (kind == EnsembleKind::circular) f.push_back(format_double(col.theta_lo));
  f.push_back(format_double(col.theta_hi));
  return f;
}

json columns_json(EnsembleKind kind, const std::vector<StatisticColumn>& cols) {
  auto arr = json::array();
  for (const auto& col : cols) {
    if (kind == EnsembleKind::circular) {
      arr.push_back({{"theta_lo", col.theta_lo}, {"theta_hi", col.theta_hi}});
    } else {
      arr.push_back({{"theta", col.theta_hi}});
    }
  }
  return arr;
}

FluctuationSample run_experiment(const RunConfig& c) {
  const auto thetas = c.effective_thetas();
  ExperimentOptions opt{c.normalization, resolve_worker_count(c.parallel)};
  return run_fluctuation_experiment(c.spec(), thetas, c.trials, c.seed, opt);
}

void run_count(const RunConfig& c, std::ostream& out) {
  const auto s = run_experiment(c);
  if (c.format == OutputFormat::json) {
    auto counts = json::array();
    for (std::size_t i = 0; i < s.trials; ++i) {
      auto row = json::array();
      for (std::size_t col = 0; col < s.width(); ++col) row.push_back(s.count(i, col));
      counts.push_back(row);
    }
    write_json(out, c, {{"columns", columns_json(c.ensemble, s.columns)}, {"counts", counts}});
    return;
  }
  write_csv_provenance(out, c);
  auto header = column_header(c.ensemble);
  header.push_back("count");
  write_csv_row(out, header);
  for (std::size_t i = 0; i < s.trials; ++i) {
    for (std::size_t col = 0; col < s.width(); ++col) {
      auto f = column_fields(c.ensemble, i, s.columns[col]);
      f.push_back(std::to_string(s.count(i, col)));
      write_csv_row(out, f);
    }
  }
}

json summary_json(const ExperimentReport& r) {
  const std::size_t w = r.width();
  auto cov = json::array();
  for (std::size_t i = 0; i < w; ++i) {
    cov.push_back(numbers_or_null(std::span<const double>(r.covariance).subspan(i * w, w)));
  }
  return {{"mean", numbers_or_null(r.mean)},
          {"covariance", cov},
          {"ks_distance", numbers_or_null(r.ks_distance)},
          {"ks_pvalue", numbers_or_null(r.ks_pvalue)},
          {"skewness", numbers_or_null(r.skewness)},
          {"excess_kurtosis", numbers_or_null(r.excess_kurtosis)},
          {"trials", r.trials},
          {"limit_variance", r.limit_variance}};
}

void write_plot_script(const RunConfig& c, const FluctuationSample& s) {
  std::ofstream gp(c.plot_script_path);
  if (!gp) throw std::runtime_error("cannot write plot script " + c.plot_script_path);
  const bool circ = c.ensemble == EnsembleKind::circular;
  const int value_col = circ ? 5 : 4;
  gp << "# histograms of normalized statistics with the limiting normal density\n"
     << "set datafile separator ','\n"
     << "set datafile commentschars '#'\n"
     << "set style fill solid 0.4\n"
     << "binwidth = 0.25\n"
     << "bin(x) = binwidth * floor(x / binwidth) + binwidth / 2\n"
     << "v = " << format_double(s.limit_variance) << "\n"
     << "trials = " << s.trials << "\n"
     << "normal(x) = trials * binwidth * exp(-x * x / (2 * v)) / sqrt(2 * pi * v)\n"
     << "set multiplot layout " << s.width() << ",1\n";
  for (const auto& col : s.columns) {
    std::string select;
    if (circ) {
      select = "($2 == " + format_double(col.theta_lo) + " && $3 == " + format_double(col.theta_hi) + ")";
    } else {
      select = "($2 == " + format_double(col.theta_hi) + ")";
    }
    gp << "plot '" << c.out_path << "' using (" << select << " ? bin($" << value_col
       << ") : 1/0):(1.0) smooth freq with boxes title 'normalized', normal(x) with lines title 'limit'\n";
  }
  gp << "unset multiplot\n";
}

void run_fluctuations(const RunConfig& c, std::ostream& out) {
  const auto s = run_experiment(c);
  std::optional<ExperimentReport> report;
  if (s.trials >= 2) report = summarize(s);
  if (c.format == OutputFormat::json) {
    auto values = json::array();
    auto counts = json::array();
    for (std::size_t i = 0; i < s.trials; ++i) {
      auto vrow = json::array();
      auto crow = json::array();
      for (std::size_t col = 0; col < s.width(); ++col) {
        vrow.push_back(s.value(i, col));
        crow.push_back(s.count(i, col));
      }
      values.push_back(vrow);
      counts.push_back(crow);
    }
    write_json(out, c,
               {{"columns", columns_json(c.ensemble, s.columns)},
                {"normalization", to_string(s.normalization)},
                {"counts", counts},
                {"values", values},
                {"summary", report ? summary_json(*report) : json(nullptr)}});
    return;
  }
  write_csv_provenance(out, c);
  if (report) {
    for (std::size_t col = 0; col < report->width(); ++col) {
      out << "# report column=" << col << " mean=" << format_double(report->mean[col])
          << " variance=" << format_double(report->cov(col, col))
          << " ks_d=" << format_double(report->ks_distance[col])
          << " ks_p=" << format_double(report->ks_pvalue[col])
          << " skewness=" << format_double(report->skewness[col])
          << " excess_kurtosis=" << format_double(report->excess_kurtosis[col])
          << " limit_variance=" << format_double(report->limit_variance) << "\r\n";
    }
    for (std::size_t i = 0; i < report->width(); ++i) {
      out << "# covariance row=" << i << ":";
      for (std::size_t j = 0; j < report->width(); ++j) out << ' ' << format_double(report->cov(i, j));
      out << "\r\n";
    }
  }
  auto header = column_header(c.ensemble);
  header.push_back("count");
  header.push_back("normalized");
  write_csv_row(out, header);
  for (std::size_t i = 0; i < s.trials; ++i) {
    for (std::size_t col = 0; col < s.width(); ++col) {
      auto f = column_fields(c.ensemble, i, s.columns[col]);
      f.push_back(std::to_string(s.count(i, col)));
      f.push_back(format_double(s.value(i, col)));
      write_csv_row(out, f);
    }
  }
  if (!c.plot_script_path.empty()) write_plot_script(c, s);
}

void run_diagnostics(const RunConfig& c, std::ostream& out) {
  const auto thetas = c.effective_thetas();
  const auto grid = c.effective_n_grid();
  TraceOptions opt;
  opt.theta1 = thetas[0];
  opt.theta2 = thetas[1];
  opt.trials = c.trials;
  opt.seed = c.seed;
  opt.workers = resolve_worker_count(c.parallel);
  const auto traces = trace_hypotheses(c.spec(), grid, opt);
  if (c.format == OutputFormat::json) {
    auto arr = json::array();
    for (const auto& t : traces) {
      arr.push_back({{"label", t.label},
                     {"n_values", t.n_values},
                     {"statistic_values", numbers_or_null(t.statistic_values)},
                     {"target", t.target}});
    }
    write_json(out, c, {{"traces", arr}});
    return;
  }
  write_csv_provenance(out, c);
  write_csv_row(out, {"label", "n", "value", "target"});
  for (const auto& t : traces) {
    for (std::size_t i = 0; i < t.n_values.size(); ++i) {
      write_csv_row(out, {t.label, std::to_string(t.n_values[i]), format_double(t.statistic_values[i]),
                          format_double(t.target)});
    }
  }
}

struct MomentRow {
  std::size_t k;
  std::string law;
  double p1;
  double p2;
  std::string moment;
  double closed_form;
  double monte_carlo;
  double std_error;
};

std::vector<MomentRow> moment_rows(const RunConfig& c) {
  const std::size_t kmax = std::min(c.coefficients, c.spec().path_length());
  std::vector<std::vector<MomentRow>> per_k(kmax);
  parallel_for(kmax, resolve_worker_count(c.parallel), [&](std::size_t k) {
    auto rng = RandomStream::for_trial(c.seed, k);
    const auto draws = static_cast<double>(c.trials);
    auto stats = [&](auto sample, std::vector<double>& sums, std::vector<double>& sq) {
      for (std::size_t d = 0; d < c.trials; ++d) {
        const auto v = sample();
        for (std::size_t m = 0; m < v.size(); ++m) {
          sums[m] += v[m];
          sq[m] += v[m] * v[m];
        }
      }
    };
    auto finish = [&](double sum, double sq, double& mean, double& se) {
      mean = sum / draws;
      se = std::sqrt(std::max(0.0, (sq / draws - mean * mean) / (draws - 1.0)));
    };
    if (c.ensemble == EnsembleKind::circular) {
      const auto law = circular_coefficient_law(c.beta, k);
      const auto m = theta_moments(law);
      std::vector<double> sums(2, 0.0), sq(2, 0.0);
      stats([&] {
        const double r2 = std::norm(sample_theta(law, rng).value);
        return std::array<double, 2>{r2, r2 * r2};
      }, sums, sq);
      const double closed[] = {m.m2, m.m4};
      const char* names[] = {"E|alpha|^2", "E|alpha|^4"};
      for (int i = 0; i < 2; ++i) {
        MomentRow row{k, "theta", law.nu(), std::nan(""), names[i], closed[i], 0, 0};
        finish(sums[i], sq[i], row.monte_carlo, row.std_error);
        per_k[k].push_back(row);
      }
      return;
    }
    const auto law = jacobi_coefficient_law(c.beta, c.a, c.b, k);
    const auto m = sym_beta_moments(law);
    std::vector<double> sums(5, 0.0), sq(5, 0.0);
    stats([&] {
      const double x = sample_sym_beta(law, rng);
      const double x2 = x * x;
      return std::array<double, 5>{x, x2, x2 * x, x2 * x2, -x2 * std::log1p(-x2)};
    }, sums, sq);
    const double closed[] = {m.m1, m.m2, m.m3, m.m4, expected_neg_x2log(law)};
    const char* names[] = {"E alpha", "E alpha^2", "E alpha^3", "E alpha^4", "E -alpha^2 log(1-alpha^2)"};
    for (int i = 0; i < 5; ++i) {
      MomentRow row{k, "sym_beta", law.s(), law.t(), names[i], closed[i], 0, 0};
      finish(sums[i], sq[i], row.monte_carlo, row.std_error);
      per_k[k].push_back(row);
    }
  });
  std::vector<MomentRow> rows;
  for (auto& v : per_k) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

void run_moments(const RunConfig& c, std::ostream& out) {
  const auto rows = moment_rows(c);
  if (c.format == OutputFormat::json) {
    auto arr = json::array();
    for (const auto& r : rows) {
      json j = {{"k", r.k}, {"law", r.law}, {"moment", r.moment}, {"closed_form", r.closed_form},
                {"monte_carlo", r.monte_carlo}, {"std_error", r.std_error}};
      if (r.law == "theta") {
        j["nu"] = r.p1;
      } else {
        j["s"] = r.p1;
        j["t"] = r.p2;
      }
      arr.push_back(j);
    }
    write_json(out, c, {{"moments", arr}});
    return;
  }
  write_csv_provenance(out, c);
  write_csv_row(out, {"k", "law", "nu_or_s", "t", "moment", "closed_form", "monte_carlo", "std_error"});
  for (const auto& r : rows) {
    write_csv_row(out, {std::to_string(r.k), r.law, format_double(r.p1),
                        r.law == "theta" ? "" : format_double(r.p2), r.moment,
                        format_double(r.closed_form), format_double(r.monte_carlo),
                        format_double(r.std_error)});
  }
}

int run_verify(const RunConfig& c, std::ostream& out) {
  verify::VerifyOptions opt;
  opt.seed = c.seed;
  opt.workers = resolve_worker_count(c.parallel);
  opt.extended = !c.quick;
  std::ostringstream log;
  opt.on_result = [&](const verify::CriterionResult& r) {
    const auto line = verify::format_result(r);
    out << line << '\n' << std::flush;
    log << line << '\n';
  };
  const auto results = verify::run_suite(opt);
  if (!c.out_path.empty() && c.out_path != "-") {
    std::ofstream f(c.out_path);
    if (!f) throw std::runtime_error("cannot open output file " + c.out_path);
    f << log.str();
  }
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return failed == 0 ? kOk : kVerificationFailed;
}

}  // namespace

void execute(const RunConfig& c, std::ostream& out) {
  validate(c);
  switch (c.subcommand) {
    case Subcommand::sample: run_sample(c, out); break;
    case Subcommand::count: run_count(c, out); break;
    case Subcommand::fluctuations: run_fluctuations(c, out); break;
    case Subcommand::diagnostics: run_diagnostics(c, out); break;
    case Subcommand::moments: run_moments(c, out); break;
    case Subcommand::verify: throw ParameterError("verify is not a data subcommand");
  }
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.subcommand == Subcommand::verify) return run_verify(c, out);
    validate(c);
    if (c.out_path.empty() || c.out_path == "-") {
      execute(c, out);
      return kOk;
    }
    std::ostringstream buffer;
    execute(c, buffer);
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + c.out_path);
    f << buffer.str();
    if (!f) throw std::runtime_error("failed writing " + c.out_path);
    return kOk;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
}

int main_entry(int argc, const char* const* argv) {
  const auto parsed = parse_command_line(argc, argv);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, std::cout, std::cerr);
}

}  // namespace betaens::cli
