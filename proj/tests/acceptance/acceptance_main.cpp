#include <iostream>

#include "acceptance.hpp"
#include "betaens/parallel.hpp"

int main() {
  betaens::verify::VerifyOptions options;
  options.workers = betaens::resolve_worker_count(0);
  options.on_result = [](const betaens::verify::CriterionResult& r) {
    std::cout << betaens::verify::format_result(r) << std::endl;
  };
  const auto results = betaens::verify::run_suite(options);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}
