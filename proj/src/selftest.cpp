#include "localprod/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "localprod/error.hpp"

namespace localprod {

namespace {

// Kernels e^{+-2 pi r} stay far from overflow below this phase magnitude.
constexpr double kMaxPhaseExponent = 50.0;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (static_cast<double>(rng() >> 11) * 0x1p-53) * (hi - lo);
}

RealVector random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& c : v) c = uniform(rng, lo, hi);
  return RealVector(std::move(v));
}

// Largest 2 pi r over the box; l_k is monotone on the nonnegative orthant.
double max_phase_exponent(const RealVector& a, const RealVector& b, int k) {
  const BoxDomain box = box_from_pair(a, b).unoriented();
  return 2.0 * std::numbers::pi * lp_point_norm(box.upper, k) / scale_denominator(a, b, k);
}

bool admissible(const LocalProductInstance& inst) {
  try {
    inst.validate();
    return max_phase_exponent(inst.a, inst.b, inst.k) <= kMaxPhaseExponent;
  } catch (const Error&) {
    return false;
  }
}

CriterionResult make(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.metrics = Json::object();
  return r;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

CriterionResult quadrature_exactness() {
  CriterionResult r = make(1, "quadrature-exactness");
  const BoxDomain box = BoxDomain::from_bounds({0.0}, {2.0});
  const auto cube = [](std::span<const double> x) { return Complex{x[0] * x[0] * x[0]}; };
  const IntegrationResult res = gauss_legendre_integrate(cube, box, 2);
  const double err = std::abs(res.value - 4.0);
  r.pass = err <= 1e-12;
  r.metrics["value"] = res.value.real();
  r.metrics["abs_error"] = err;
  r.summary = "GL(m=2) of x^3 on [0,2] = " + fmt(res.value.real()) + ", |err| = " + fmt(err) + " (tol 1e-12)";
  return r;
}

CriterionResult quadrature_oracle() {
  CriterionResult r = make(2, "quadrature-oracle");
  const double exact = (std::sqrt(2.0) + std::asinh(1.0)) / 3.0;
  const BoxDomain box = BoxDomain::from_bounds({0.0, 0.0}, {1.0, 1.0});
  const IntegrationResult gl = integrate_box(Kernel::lp_norm(2), box, QuadratureConfig{});
  const IntegrationResult mc = mc_integrate(Kernel::lp_norm(2), box, 100000, kDefaultSeed);
  const double gl_err = std::abs(gl.value.real() - exact);
  const double mc_err = std::abs(mc.value.real() - exact);
  const bool gl_ok = gl_err <= 1e-8 && !gl.budget_exceeded;
  const bool mc_ok = mc_err <= 4.0 * mc.error_estimate;
  r.pass = gl_ok && mc_ok;
  r.metrics["exact"] = exact;
  r.metrics["gl_value"] = gl.value.real();
  r.metrics["gl_abs_error"] = gl_err;
  r.metrics["mc_value"] = mc.value.real();
  r.metrics["mc_standard_error"] = mc.error_estimate;
  r.summary = "GL |err| = " + fmt(gl_err) + " (tol 1e-8); MC |err| = " + fmt(mc_err) + " vs 4 SE = " +
              fmt(4.0 * mc.error_estimate);
  return r;
}

CriterionResult path_equivalence() {
  CriterionResult r = make(3, "path-equivalence");
  const std::vector<Sheet> sheets = {Sheet::constant(1.0), Sheet::log(), Sheet::identity(), Sheet::reciprocal(),
                                     Sheet::reciprocal_log()};
  const int ks[] = {4, 7, 8};
  std::mt19937_64 rng(kDefaultSeed ^ 3u);
  const QuadratureConfig cfg;
  int failures = 0;
  int errors = 0;
  double worst = 0.0;
  Json per_sheet = Json::object();
  for (int t = 0; t < 100; ++t) {
    LocalProductInstance inst{.a = RealVector{1.0}, .b = RealVector{1.0}};
    do {
      const std::size_t n = 1 + rng() % 3;
      inst = LocalProductInstance{.a = random_vector(rng, n, 0.2, 2.0),
                                  .b = random_vector(rng, n, 0.2, 2.0),
                                  .k = ks[rng() % 3],
                                  .sheet = sheets[static_cast<std::size_t>(t) % sheets.size()]};
    } while (!admissible(inst));
    try {
      const Complex direct = local_product_direct(inst, cfg).value;
      const Complex closed = local_product_closed(inst, cfg).value;
      const double diff = std::abs(direct - closed);
      const double tol = std::max(1e-6 * std::abs(closed), 1e-9);
      if (diff > tol) ++failures;
      worst = std::max(worst, diff / tol);
    } catch (const Error&) {
      ++errors;
    }
    const std::string name(inst.sheet.name());
    per_sheet[name] = per_sheet.value(name, 0) + 1;
  }
  r.pass = failures == 0 && errors == 0;
  r.metrics["instances"] = 100;
  r.metrics["failures"] = failures;
  r.metrics["errors"] = errors;
  r.metrics["worst_diff_over_tol"] = worst;
  r.metrics["per_sheet"] = per_sheet;
  r.summary = "100 instances, " + std::to_string(failures) + " over tolerance, " + std::to_string(errors) +
              " errors, worst diff/tol = " + fmt(worst);
  return r;
}

Json report_metrics(const TheoremReport& rep) {
  Json j;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["lhs_error"] = rep.lhs_error;
  j["verdict"] = to_string(rep.verdict);
  return j;
}

CriterionResult analytic_app2() {
  CriterionResult r = make(4, "analytic-app2");
  const TheoremReport rep = thm_app2_report(RealVector{1.0}, RealVector{2.0}, 1, QuadratureConfig{});
  r.pass = std::abs(rep.lhs - 1.5) <= 1e-9 && std::abs(rep.rhs - 15.154) <= 1e-3 && rep.verdict == Verdict::Holds;
  r.metrics = report_metrics(rep);
  r.summary = "lhs = " + fmt(rep.lhs) + " (1.5 +- 1e-9), rhs = " + fmt(rep.rhs) + " (15.154 +- 1e-3), " +
              std::string(to_string(rep.verdict));
  return r;
}

CriterionResult analytic_app3() {
  CriterionResult r = make(5, "analytic-app3");
  const TheoremReport rep = thm_app3_report(RealVector{1.0}, RealVector{2.0}, 1, QuadratureConfig{});
  r.pass = std::abs(rep.lhs - std::numbers::ln2) <= 1e-9 && std::abs(rep.rhs - 0.016946) <= 1e-6 &&
           rep.verdict == Verdict::Holds;
  r.metrics = report_metrics(rep);
  r.summary = "lhs = " + fmt(rep.lhs) + " (ln 2 +- 1e-9), rhs = " + fmt(rep.rhs) + " (0.016946 +- 1e-6), " +
              std::string(to_string(rep.verdict));
  return r;
}

Json summary_metrics(const HuntSummary& s) {
  Json j;
  j["samples"] = s.samples;
  j["violations"] = s.violations;
  j["inconclusive"] = s.inconclusive;
  j["holds"] = s.holds;
  j["errors"] = s.errors;
  return j;
}

CriterionResult in_regime_sweep(const SelftestOptions& opts) {
  CriterionResult r = make(6, "in-regime-sweep");
  SearchConfig sc;
  sc.n_range = {1, 3};
  sc.s_range = {1, 2};
  sc.component_range = {0.1, 3.0};
  sc.samples = 200;
  sc.seed = kDefaultSeed ^ 6u;
  const QuadratureConfig cfg;
  bool pass = true;
  std::string summary;
  for (TheoremId id : {TheoremId::App2, TheoremId::App3}) {
    sc.theorem = id;
    sc.pairing_range = id == TheoremId::App2 ? RealRange{1.1, 10.0} : RealRange{1.1, std::numbers::e};
    const HuntResult h = hunt(sc, cfg, HuntOptions{.workers = opts.workers, .on_record = {}});
    const bool ok = h.summary.violations == 0 && h.summary.errors == 0 &&
                    h.summary.inconclusive * 50 <= h.summary.samples;  // <= 2%
    pass = pass && ok;
    r.metrics[std::string(to_string(id))] = summary_metrics(h.summary);
    summary += std::string(to_string(id)) + ": " + std::to_string(h.summary.violations) + " violated, " +
               std::to_string(h.summary.inconclusive) + " inconclusive, " + std::to_string(h.summary.errors) +
               " errors of " + std::to_string(h.summary.samples) + "; ";
  }
  r.pass = pass;
  r.summary = summary;
  return r;
}

CriterionResult counterexample_existence(const SelftestOptions& opts) {
  CriterionResult r = make(7, "counterexample-existence");
  constexpr std::size_t kReplays = 25;
  SearchConfig sc;
  sc.n_range = {2, 2};
  sc.s_range = {1, 1};
  sc.pairing_range = {0.0, 0.1};
  sc.component_range = {0.001, 2.0};
  sc.samples = 10000;
  sc.seed = kDefaultSeed ^ 7u;
  const QuadratureConfig cfg;
  bool pass = true;
  std::string summary;
  for (TheoremId id : {TheoremId::App2, TheoremId::App3}) {
    sc.theorem = id;
    const HuntResult h = hunt(sc, cfg, HuntOptions{.workers = opts.workers, .on_record = {}});
    std::size_t replayed = 0;
    std::size_t reproduced = 0;
    for (const ViolationRecord& rec : h.records) {
      if (replayed == kReplays) break;
      ++replayed;
      const TheoremReport again = replay(rec, cfg);
      const bool same = again.verdict == Verdict::Violated &&
                        std::abs(again.lhs - rec.lhs) <= 1e-12 * std::abs(rec.lhs) &&
                        std::abs(again.rhs - rec.rhs) <= 1e-12 * std::abs(rec.rhs);
      if (same) ++reproduced;
    }
    const bool ok = !h.records.empty() && reproduced == replayed;
    pass = pass && ok;
    Json m = summary_metrics(h.summary);
    m["replayed"] = replayed;
    m["reproduced"] = reproduced;
    if (!h.records.empty()) m["first_record"] = to_json(h.records.front());
    r.metrics[std::string(to_string(id))] = m;
    summary += std::string(to_string(id)) + ": " + std::to_string(h.records.size()) + " violations in " +
               std::to_string(h.summary.samples) + " samples, " + std::to_string(reproduced) + "/" +
               std::to_string(replayed) + " replayed; ";
  }
  r.pass = pass;
  r.summary = summary;
  return r;
}

CriterionResult swap_identity() {
  CriterionResult r = make(8, "swap-identity");
  const SuiteOutcome o = run_swap_suite(50, kDefaultSeed ^ 8u, QuadratureConfig{});
  r.pass = o.failed == 0 && o.errors == 0 && o.passed == 50;
  r.metrics["passed"] = o.passed;
  r.metrics["failed"] = o.failed;
  r.metrics["errors"] = o.errors;
  r.metrics["worst_rel_err"] = o.worst;
  r.summary = std::to_string(o.passed) + "/50 pass, worst rel err = " + fmt(o.worst) + " (tol 1e-6)";
  return r;
}

CriterionResult modulus_bound() {
  CriterionResult r = make(9, "modulus-bound");
  const SuiteOutcome o = run_modulus_suite(100, kDefaultSeed ^ 9u, QuadratureConfig{});
  r.pass = o.failed == 0 && o.errors == 0 && o.passed == 100;
  r.metrics["passed"] = o.passed;
  r.metrics["failed"] = o.failed;
  r.metrics["errors"] = o.errors;
  r.metrics["worst_ratio"] = o.worst;
  r.summary = std::to_string(o.passed) + "/100 pass, worst |G|/bound = " + fmt(o.worst);
  return r;
}

}  // namespace

SuiteOutcome run_swap_suite(std::int64_t trials, std::uint64_t seed, const QuadratureConfig& cfg) {
  SuiteOutcome out;
  out.trials = trials;
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < trials; ++t) {
    LocalProductInstance inst{.a = RealVector{1.0, 0.0}, .b = RealVector{0.0, 1.0}};
    do {
      inst = LocalProductInstance{.a = random_vector(rng, 2, -2.0, 2.0),
                                  .b = random_vector(rng, 2, -2.0, 2.0),
                                  .k = t % 2 == 0 ? 4 : 7,
                                  .sheet = Sheet::identity(),
                                  .pairing = Pairing::symplectic2d()};
    } while (!admissible(inst));
    try {
      const SwapIdentityCheck c = prop_swap_identity_check(inst, cfg);
      (c.pass ? out.passed : out.failed)++;
      out.worst = std::max(out.worst, c.rel_err);
    } catch (const Error&) {
      ++out.errors;
    }
  }
  return out;
}

SuiteOutcome run_modulus_suite(std::int64_t trials, std::uint64_t seed, const QuadratureConfig& cfg) {
  SuiteOutcome out;
  out.trials = trials;
  const std::vector<Sheet> sheets = {Sheet::constant(1.0), Sheet::identity(),       Sheet::reciprocal(),
                                     Sheet::log(),         Sheet::reciprocal_log(), Sheet::absolute_value()};
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < trials; ++t) {
    LocalProductInstance inst{.a = RealVector{1.0}, .b = RealVector{2.0}};
    do {
      const std::size_t n = 1 + rng() % 3;
      inst = LocalProductInstance{.a = random_vector(rng, n, 0.2, 2.0),
                                  .b = random_vector(rng, n, 0.2, 2.0),
                                  .k = 1 + static_cast<int>(rng() % 8),
                                  .sheet = sheets[static_cast<std::size_t>(t) % sheets.size()]};
    } while (!admissible(inst));
    try {
      const ModulusBoundCheck c = modulus_bound_check(inst, cfg);
      (c.pass ? out.passed : out.failed)++;
      if (c.bound > 0.0) out.worst = std::max(out.worst, c.g_abs / c.bound);
    } catch (const Error&) {
      ++out.errors;
    }
  }
  return out;
}

std::vector<CriterionResult> run_acceptance_criteria(const SelftestOptions& opts) {
  std::vector<CriterionResult> results;
  const auto record = [&](CriterionResult r) {
    if (opts.on_result) opts.on_result(r);
    results.push_back(std::move(r));
  };
  record(quadrature_exactness());
  record(quadrature_oracle());
  record(path_equivalence());
  record(analytic_app2());
  record(analytic_app3());
  record(in_regime_sweep(opts));
  record(counterexample_existence(opts));
  record(swap_identity());
  record(modulus_bound());
  return results;
}

std::vector<CriterionResult> run_selftest(const SelftestOptions& opts) {
  std::vector<CriterionResult> first = run_acceptance_criteria(opts);
  SelftestOptions quiet = opts;
  quiet.on_result = nullptr;
  const std::vector<CriterionResult> second = run_acceptance_criteria(quiet);

  const std::string log_first = selftest_log(first);
  const std::string log_second = selftest_log(second);
  CriterionResult det = make(10, "determinism");
  det.pass = log_first == log_second;
  det.metrics["log_bytes"] = log_first.size();
  det.summary = det.pass ? "two runs produced byte-identical logs (" + std::to_string(log_first.size()) + " bytes)"
                         : "logs differ between runs";
  if (opts.on_result) opts.on_result(det);
  first.push_back(std::move(det));
  return first;
}

std::string selftest_log(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const CriterionResult& r : results) {
    Json j;
    j["type"] = "selftest_criterion";
    j["id"] = r.id;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["metrics"] = r.metrics;
    out += dump_line(j);
    out += '\n';
  }
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.summary;
}

}  // namespace localprod
