#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "localprod/serialize.hpp"

namespace localprod {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  Json metrics;
};

struct SelftestOptions {
  /// Hunt worker threads; results do not depend on it.
  unsigned workers = 0;
  /// Called as each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

/// Criteria 1-9: quadrature oracles, path equivalence, analytic theorem
/// cases, in-regime sweeps, counterexample hunts, swap identity, modulus bound.
std::vector<CriterionResult> run_acceptance_criteria(const SelftestOptions& opts = {});

/// Criteria 1-9 followed by criterion 10, which repeats 1-9 and requires a
/// byte-identical JSONL log.
std::vector<CriterionResult> run_selftest(const SelftestOptions& opts = {});

/// One JSON object per criterion, newline-terminated. Contains no timings.
std::string selftest_log(const std::vector<CriterionResult>& results);

/// "[PASS] 3 path-equivalence: ..." style line.
std::string format_result_line(const CriterionResult& r);

struct SuiteOutcome {
  std::int64_t trials = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::int64_t errors = 0;
  /// Largest relative error (swap) or largest g_abs / bound ratio (modulus).
  double worst = 0.0;
};

/// Seeded Symplectic2D instances, identity sheet, k in {4, 7}.
SuiteOutcome run_swap_suite(std::int64_t trials, std::uint64_t seed, const QuadratureConfig& cfg);
/// Seeded instances cycling through every sheet, n in {1, 2, 3}, k in [1, 8].
SuiteOutcome run_modulus_suite(std::int64_t trials, std::uint64_t seed, const QuadratureConfig& cfg);

}  // namespace localprod
