#pragma once

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "config.hpp"

namespace betaens::cli {

/// Shortest form that still round-trips: 17 significant digits.
std::string format_double(double x);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// `# key=value` provenance lines: version, seed and the output-relevant
/// part of the configuration (the worker count is left out on purpose).
void write_csv_provenance(std::ostream& out, const RunConfig& config);

nlohmann::json config_to_json(const RunConfig& config);

/// {seed, version, timestamp}; the timestamp is UTC ISO-8601.
nlohmann::json provenance_json(const RunConfig& config);

/// NaN and infinities become null.
nlohmann::json number_or_null(double x);
nlohmann::json numbers_or_null(std::span<const double> xs);

}  // namespace betaens::cli
