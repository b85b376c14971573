#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "localprod/core.hpp"
#include "localprod/quadrature.hpp"
#include "localprod/theorems.hpp"

namespace localprod {

struct IntRange {
  int lo = 1;
  int hi = 1;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct RealRange {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const RealRange&, const RealRange&) = default;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct SearchConfig {
  TheoremId theorem = TheoremId::App2;
  IntRange n_range{2, 2};
  IntRange s_range{1, 1};
  /// Target interval for <a,b>; clipped to the theorem's hypothesis region.
  RealRange pairing_range{0.0, 0.1};
  RealRange component_range{0.001, 2.0};
  std::int64_t samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  int max_attempts_per_sample = 100;

  /// Throws InvalidConfig for empty ranges or a pairing range disjoint from
  /// the hypothesis region.
  void validate() const;
  /// pairing_range intersected with (0, inf) for app2 and (0, e] for app3.
  RealRange effective_pairing_range() const;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

struct SampledInstance {
  RealVector a;
  RealVector b;
  int s;
  double pairing;
};

/// Deterministic in (seed, index): components are drawn uniformly from
/// component_range, then b is rescaled so <a,b> hits a uniform target in the
/// pairing range. Rejected draws are retried up to max_attempts_per_sample;
/// after that ConstraintUnsatisfiable is raised.
SampledInstance sample_instance(const SearchConfig& sc, std::int64_t index);

struct ViolationRecord {
  TheoremId theorem = TheoremId::App2;
  RealVector a{0.0};
  RealVector b{0.0};
  int s = 1;
  int k = 4;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double lhs_error = 0.0;
  std::int64_t sample_index = 0;
  /// The verdict came from the doubled-effort retry.
  bool refined = false;

  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

/// Report with one doubled-effort retry when the first pass is Inconclusive.
/// `refined` is set when the retry's report is the one returned.
TheoremReport evaluate_with_retry(TheoremId id, const RealVector& a, const RealVector& b, int s,
                                  const QuadratureConfig& cfg, bool* refined = nullptr);

/// Recomputes a record's report at the effort level it was found with.
TheoremReport replay(const ViolationRecord& record, const QuadratureConfig& cfg);

struct SampleError {
  std::int64_t sample_index;
  std::string message;
};

struct HuntSummary {
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  std::int64_t inconclusive = 0;
  std::int64_t holds = 0;
  std::int64_t errors = 0;
};

struct HuntResult {
  std::vector<ViolationRecord> records;  // ordered by sample_index
  std::vector<SampleError> errors;       // ordered by sample_index
  HuntSummary summary;
};

struct HuntOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  /// Invoked for each record in sample_index order as blocks complete.
  std::function<void(const ViolationRecord&)> on_record;
};

/// Evaluates every sample; per-sample failures are collected, never thrown.
HuntResult hunt(const SearchConfig& sc, const QuadratureConfig& cfg, const HuntOptions& opts = {});

}  // namespace localprod
