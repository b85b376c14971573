#include "localprod/falsify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

#include "localprod/error.hpp"

namespace localprod {

namespace {

constexpr std::int64_t kHuntBlock = 4096;

double open_unit(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; }

int uniform_int(std::mt19937_64& rng, IntRange r) {
  const auto span = static_cast<std::uint64_t>(r.hi - r.lo) + 1;
  return r.lo + static_cast<int>(rng() % span);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += a[j] * b[j];
  return sum;
}

enum class Outcome { Holds, Violated, Inconclusive, Failed };

struct SampleOutcome {
  Outcome outcome = Outcome::Failed;
  std::optional<ViolationRecord> record;
  std::string error;
};

SampleOutcome run_sample(const SearchConfig& sc, const QuadratureConfig& cfg, std::int64_t index) {
  SampleOutcome out;
  try {
    const SampledInstance inst = sample_instance(sc, index);
    bool refined = false;
    const TheoremReport report = evaluate_with_retry(sc.theorem, inst.a, inst.b, inst.s, cfg, &refined);
    switch (report.verdict) {
      case Verdict::Holds:
        out.outcome = Outcome::Holds;
        break;
      case Verdict::Inconclusive:
        out.outcome = Outcome::Inconclusive;
        break;
      case Verdict::Violated:
        out.outcome = Outcome::Violated;
        out.record = ViolationRecord{.theorem = report.theorem,
                                     .a = report.a,
                                     .b = report.b,
                                     .s = report.s,
                                     .k = report.k,
                                     .lhs = report.lhs,
                                     .rhs = report.rhs,
                                     .margin = report.margin,
                                     .lhs_error = report.lhs_error,
                                     .sample_index = index,
                                     .refined = refined};
        break;
    }
  } catch (const std::exception& e) {
    out.outcome = Outcome::Failed;
    out.error = e.what();
  }
  return out;
}

}  // namespace

RealRange SearchConfig::effective_pairing_range() const {
  RealRange r = pairing_range;
  r.lo = std::max(r.lo, 0.0);
  if (theorem == TheoremId::App3) r.hi = std::min(r.hi, std::numbers::e);
  return r;
}

void SearchConfig::validate() const {
  if (n_range.lo < 1 || n_range.hi < n_range.lo || n_range.hi > static_cast<int>(kMaxDim))
    throw Error(ErrorKind::InvalidConfig, "n_range must satisfy 1 <= lo <= hi <= 12");
  if (s_range.lo < 1 || s_range.hi < s_range.lo) throw Error(ErrorKind::InvalidConfig, "s_range must satisfy 1 <= lo <= hi");
  if (!std::isfinite(component_range.lo) || !std::isfinite(component_range.hi) || component_range.lo < 0.0 ||
      !(component_range.hi > component_range.lo))
    throw Error(ErrorKind::InvalidConfig, "component_range must satisfy 0 <= lo < hi");
  if (!std::isfinite(pairing_range.lo) || !std::isfinite(pairing_range.hi))
    throw Error(ErrorKind::InvalidConfig, "pairing_range must be finite");
  const RealRange eff = effective_pairing_range();
  if (!(eff.hi > eff.lo))
    throw Error(ErrorKind::InvalidConfig, "pairing_range is empty after intersecting with the hypothesis region");
  if (samples < 0) throw Error(ErrorKind::InvalidConfig, "samples must be >= 0");
  if (max_attempts_per_sample < 1) throw Error(ErrorKind::InvalidConfig, "max_attempts_per_sample must be >= 1");
}

SampledInstance sample_instance(const SearchConfig& sc, std::int64_t index) {
  sc.validate();
  if (index < 0 || index >= sc.samples)
    throw Error(ErrorKind::InvalidArgument, "sample index " + std::to_string(index) + " outside [0, samples)");

  std::mt19937_64 rng(sc.seed ^ static_cast<std::uint64_t>(index));
  const auto n = static_cast<std::size_t>(uniform_int(rng, sc.n_range));
  const int s = uniform_int(rng, sc.s_range);
  const RealRange target_range = sc.effective_pairing_range();
  const double c_lo = sc.component_range.lo;
  const double c_hi = sc.component_range.hi;

  // Cauchy-Schwarz: with components in [0, c_hi], <a,b> <= n c_hi^2.
  if (target_range.lo >= static_cast<double>(n) * c_hi * c_hi)
    throw Error(ErrorKind::ConstraintUnsatisfiable,
                "pairing target above " + std::to_string(target_range.lo) + " is unreachable with n = " +
                    std::to_string(n) + " and components <= " + std::to_string(c_hi));

  std::vector<double> a(n);
  std::vector<double> b(n);
  for (int attempt = 0; attempt < sc.max_attempts_per_sample; ++attempt) {
    for (double& c : a) c = c_lo + open_unit(rng) * (c_hi - c_lo);
    for (double& c : b) c = c_lo + open_unit(rng) * (c_hi - c_lo);
    const double target = target_range.lo + open_unit(rng) * (target_range.hi - target_range.lo);
    const double raw = dot(a, b);
    if (!(raw > 0.0) || target == 1.0) continue;

    const double t = target / raw;
    bool in_range = true;
    for (double& c : b) {
      c *= t;
      if (c < c_lo || c > c_hi) in_range = false;
      if (sc.theorem == TheoremId::App3 && !(c > 0.0)) in_range = false;
    }
    if (!in_range) continue;
    if (sc.theorem == TheoremId::App3 && std::any_of(a.begin(), a.end(), [](double c) { return !(c > 0.0); })) continue;

    const double p = dot(a, b);
    if (!(p > target_range.lo) || p > target_range.hi || p == 1.0) continue;
    return SampledInstance{RealVector(a), RealVector(b), s, p};
  }
  throw Error(ErrorKind::ConstraintUnsatisfiable,
              "no admissible instance after " + std::to_string(sc.max_attempts_per_sample) + " attempts (sample " +
                  std::to_string(index) + ")");
}

TheoremReport evaluate_with_retry(TheoremId id, const RealVector& a, const RealVector& b, int s,
                                  const QuadratureConfig& cfg, bool* refined) {
  TheoremReport report = theorem_report(id, a, b, s, cfg);
  bool retried = false;
  if (report.verdict == Verdict::Inconclusive) {
    report = theorem_report(id, a, b, s, cfg.doubled());
    retried = true;
  }
  if (refined != nullptr) *refined = retried;
  return report;
}

TheoremReport replay(const ViolationRecord& record, const QuadratureConfig& cfg) {
  return theorem_report(record.theorem, record.a, record.b, record.s, record.refined ? cfg.doubled() : cfg);
}

HuntResult hunt(const SearchConfig& sc, const QuadratureConfig& cfg, const HuntOptions& opts) {
  sc.validate();
  HuntResult result;
  result.summary.samples = sc.samples;
  if (sc.samples == 0) return result;

  unsigned workers = opts.workers != 0 ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  std::vector<SampleOutcome> block;
  for (std::int64_t start = 0; start < sc.samples; start += kHuntBlock) {
    const std::int64_t count = std::min(kHuntBlock, sc.samples - start);
    block.assign(static_cast<std::size_t>(count), SampleOutcome{});
    const auto active = static_cast<unsigned>(std::min<std::int64_t>(workers, count));
    // Each slot is written by exactly one worker; merging below is in index
    // order, so the worker count never shows in the output.
    auto work = [&](unsigned w) {
      for (std::int64_t i = w; i < count; i += active) block[static_cast<std::size_t>(i)] = run_sample(sc, cfg, start + i);
    };
    if (active <= 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(active);
      for (unsigned w = 0; w < active; ++w) pool.emplace_back(work, w);
    }
    for (std::int64_t i = 0; i < count; ++i) {
      SampleOutcome& o = block[static_cast<std::size_t>(i)];
      switch (o.outcome) {
        case Outcome::Holds:
          ++result.summary.holds;
          break;
        case Outcome::Inconclusive:
          ++result.summary.inconclusive;
          break;
        case Outcome::Violated:
          ++result.summary.violations;
          if (opts.on_record) opts.on_record(*o.record);
          result.records.push_back(std::move(*o.record));
          break;
        case Outcome::Failed:
          ++result.summary.errors;
          result.errors.push_back(SampleError{start + i, std::move(o.error)});
          break;
      }
    }
  }
  return result;
}

}  // namespace localprod
