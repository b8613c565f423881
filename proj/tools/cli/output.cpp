#include "output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include "betaens/version.hpp"

namespace betaens::cli {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

namespace {

std::string join(const std::vector<double>& xs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += sep;
    s += format_double(xs[i]);
  }
  return s;
}

}  // namespace

void write_csv_provenance(std::ostream& out, const RunConfig& c) {
  out << "# betaens version=" << kVersion << "\r\n";
  out << "# seed=" << c.seed << "\r\n";
  out << "# config subcommand=" << to_string(c.subcommand) << " ensemble=" << to_string(c.ensemble)
      << " n=" << c.n << " beta=" << format_double(c.beta);
  if (c.ensemble == EnsembleKind::jacobi) {
    out << " a=" << format_double(c.a) << " b=" << format_double(c.b);
  }
  out << " thetas=" << join(c.effective_thetas(), ';') << " trials=" << c.trials;
  if (c.subcommand == Subcommand::fluctuations) {
    out << " normalization=" << to_string(c.normalization);
  }
  if (c.subcommand == Subcommand::diagnostics) {
    out << " n_grid=";
    const auto grid = c.effective_n_grid();
    for (std::size_t i = 0; i < grid.size(); ++i) out << (i ? ";" : "") << grid[i];
  }
  if (c.subcommand == Subcommand::moments) out << " coefficients=" << c.coefficients;
  out << "\r\n";
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["subcommand"] = to_string(c.subcommand);
  j["ensemble"] = to_string(c.ensemble);
  j["n"] = c.n;
  j["beta"] = c.beta;
  if (c.ensemble == EnsembleKind::jacobi) {
    j["a"] = c.a;
    j["b"] = c.b;
  }
  j["thetas"] = c.effective_thetas();
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["format"] = to_string(c.format);
  if (c.subcommand == Subcommand::fluctuations) j["normalization"] = to_string(c.normalization);
  if (c.subcommand == Subcommand::diagnostics) j["n_grid"] = c.effective_n_grid();
  if (c.subcommand == Subcommand::moments) j["coefficients"] = c.coefficients;
  return j;
}

nlohmann::json provenance_json(const RunConfig& c) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {{"seed", c.seed}, {"version", kVersion}, {"timestamp", stamp}};
}

nlohmann::json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json numbers_or_null(std::span<const double> xs) {
  auto arr = nlohmann::json::array();
  for (double x : xs) arr.push_back(number_or_null(x));
  return arr;
}

}  // namespace betaens::cli
