#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace betaens::verify {

struct CriterionResult {
  std::string id;  // "1".."12" for acceptance criteria, "x1".. for extended checks
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: none
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool extended = false;
  std::function<void(const CriterionResult&)> on_result;
};

std::string format_result(const CriterionResult& r);

/// Acceptance criteria 1–12, plus the extended property checks when
/// options.extended is set. Results are reported through on_result as they
/// finish and returned in order.
std::vector<CriterionResult> run_suite(const VerifyOptions& options);

}  // namespace betaens::verify
