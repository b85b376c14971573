#include <chrono>
#include <iostream>

#include "localprod/selftest.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  localprod::SelftestOptions opts;
  opts.on_result = [](const localprod::CriterionResult& r) {
    std::cout << localprod::format_result_line(r) << std::endl;
  };
  const auto results = localprod::run_selftest(opts);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  const double seconds = std::chrono::duration<double>(clock::now() - start).count();
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed in " << seconds << " s"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
