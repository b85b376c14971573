#include "localprod/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "localprod/error.hpp"

namespace localprod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kProbesPerDim = 32;
constexpr std::size_t kMaxProbeDim = 3;

void check_common(const RealVector& a, const RealVector& b, int s, const TheoremOptions& opts, const char* name) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch,
                "vectors have lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  const int min_s = opts.allow_s_zero ? 0 : 1;
  if (s < min_s)
    throw Error(ErrorKind::HypothesisViolated,
                std::string(name) + ": s must be >= " + std::to_string(min_s) + ", got " + std::to_string(s));
}

double pairing_of(const RealVector& a, const RealVector& b) { return pairing_eval(Pairing::dot(), a, b); }

TheoremReport finish_report(TheoremId id, const RealVector& a, const RealVector& b, int s, int k,
                            const IntegrationResult& lhs_integral, double rhs) {
  TheoremReport r{.theorem = id, .a = a, .b = b, .s = s, .k = k};
  r.lhs = std::abs(lhs_integral.value);
  r.lhs_error = lhs_integral.error_estimate;
  r.rhs = rhs;
  r.margin = id == TheoremId::App2 ? rhs - r.lhs : r.lhs - rhs;
  r.verdict = classify_margin(r.margin, r.lhs_error);
  r.budget_exceeded = lhs_integral.budget_exceeded;
  return r;
}

bool is_antisymmetric(const Pairing& p, std::size_t n) {
  if (p.kind() == Pairing::Kind::DotProduct) return false;
  if (p.kind() == Pairing::Kind::Symplectic2D) return true;
  const auto m = p.matrix();
  double magnitude = 0.0;
  for (double v : m) magnitude = std::max(magnitude, std::abs(v));
  // Probe <e_i, e_j> + <e_j, e_i> on the standard basis.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> ei(n, 0.0);
    ei[i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> ej(n, 0.0);
      ej[j] = 1.0;
      const RealVector u(ei);
      const RealVector v(ej);
      if (std::abs(pairing_eval(p, u, v) + pairing_eval(p, v, u)) > 1e-12 * magnitude) return false;
    }
  }
  return magnitude > 0.0;
}

double kernel_modulus_or_inf(const Sheet& f, int k, double r) {
  try {
    return std::abs(sheet_phase_eval(f, k, r));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainError || e.kind() == ErrorKind::Overflow)
      return std::numeric_limits<double>::infinity();
    throw;
  }
}

}  // namespace

std::string_view to_string(TheoremId id) noexcept { return id == TheoremId::App2 ? "app2" : "app3"; }

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Violated: return "Violated";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "";
}

TheoremId theorem_from_name(std::string_view name) {
  if (name == "app2") return TheoremId::App2;
  if (name == "app3") return TheoremId::App3;
  throw Error(ErrorKind::ValidationError, "unknown theorem \"" + std::string(name) + "\" (expected app2 or app3)");
}

Verdict verdict_from_name(std::string_view name) {
  if (name == "Holds") return Verdict::Holds;
  if (name == "Violated") return Verdict::Violated;
  if (name == "Inconclusive") return Verdict::Inconclusive;
  throw Error(ErrorKind::ValidationError, "unknown verdict \"" + std::string(name) + "\"");
}

Verdict classify_margin(double margin, double lhs_error) noexcept {
  if (!(std::abs(margin) > kVerdictGuard * lhs_error)) return Verdict::Inconclusive;
  return margin > 0.0 ? Verdict::Holds : Verdict::Violated;
}

void check_app2_hypothesis(const RealVector& a, const RealVector& b, int s, const TheoremOptions& opts) {
  check_common(a, b, s, opts, "app2");
  if (s == 0) throw Error(ErrorKind::HypothesisViolated, "app2: s = 0 gives the undefined l_0 norm");
  const double p = pairing_of(a, b);
  if (!(p > 0.0)) throw Error(ErrorKind::HypothesisViolated, "app2 requires <a,b> > 0, got " + std::to_string(p));
  if (p == 1.0) throw Error(ErrorKind::HypothesisViolated, "app2 requires <a,b> != 1");
}

void check_app3_hypothesis(const RealVector& a, const RealVector& b, int s, const TheoremOptions& opts) {
  check_common(a, b, s, opts, "app3");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!(a[j] > 0.0) || !(b[j] > 0.0))
      throw Error(ErrorKind::HypothesisViolated, "app3 requires every a_j, b_j > 0");
  }
  const double p = pairing_of(a, b);
  if (!(p > 0.0) || p > std::numbers::e)
    throw Error(ErrorKind::HypothesisViolated, "app3 requires 0 < <a,b> <= e, got " + std::to_string(p));
  if (p == 1.0) throw Error(ErrorKind::HypothesisViolated, "app3 requires <a,b> != 1");
}

double app2_rhs(const RealVector& a, const RealVector& b, int s) {
  const double p = pairing_of(a, b);
  const double power = 4.0 * s + 1.0;
  const double norms = std::pow(euclidean_norm(a), power) + std::pow(euclidean_norm(b), power);
  const double volume = std::abs(signed_volume(box_from_pair(a, b)));
  return std::abs(p) / (kTwoPi * std::abs(std::log(p))) * norms * volume;
}

double app3_rhs(const RealVector& a, const RealVector& b, int s) {
  const double p = pairing_of(a, b);
  const double power = 4.0 * s + 4.0;
  const double norms = std::pow(euclidean_norm(a), power) + std::pow(euclidean_norm(b), power);
  const double volume = std::abs(signed_volume(box_from_pair(a, b)));
  return kTwoPi * std::abs(std::log(p)) * volume / norms;
}

TheoremReport thm_app2_report(const RealVector& a, const RealVector& b, int s, const QuadratureConfig& cfg,
                              const TheoremOptions& opts) {
  check_app2_hypothesis(a, b, s, opts);
  const int k = 4 * s;
  const IntegrationResult lhs = integrate_box(Kernel::lp_norm(k), box_from_pair(a, b), cfg);
  return finish_report(TheoremId::App2, a, b, s, k, lhs, app2_rhs(a, b, s));
}

TheoremReport thm_app3_report(const RealVector& a, const RealVector& b, int s, const QuadratureConfig& cfg,
                              const TheoremOptions& opts) {
  check_app3_hypothesis(a, b, s, opts);
  const int k = 4 * s + 3;
  const IntegrationResult lhs = integrate_box(Kernel::reciprocal_lp_norm(k), box_from_pair(a, b), cfg);
  return finish_report(TheoremId::App3, a, b, s, k, lhs, app3_rhs(a, b, s));
}

TheoremReport theorem_report(TheoremId id, const RealVector& a, const RealVector& b, int s,
                             const QuadratureConfig& cfg, const TheoremOptions& opts) {
  return id == TheoremId::App2 ? thm_app2_report(a, b, s, cfg, opts) : thm_app3_report(a, b, s, cfg, opts);
}

SwapIdentityCheck prop_swap_identity_check(const LocalProductInstance& inst, const QuadratureConfig& cfg) {
  if (inst.sheet.kind() != Sheet::Kind::Identity)
    throw Error(ErrorKind::InvalidArgument, "swap identity is checked for the identity sheet only");
  inst.validate();
  const std::size_t n = inst.a.size();
  if (!is_antisymmetric(inst.pairing, n))
    throw Error(ErrorKind::PairingNotAntisymmetric, "swap identity needs <a,b> = -<b,a>");

  LocalProductInstance swapped = inst;
  swapped.a = inst.b;
  swapped.b = inst.a;
  const double sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;

  SwapIdentityCheck out;
  out.lhs = local_product_direct(inst, cfg).value;
  out.rhs = sign * local_product_direct(swapped, cfg).value;
  const double magnitude = std::max(std::abs(out.lhs), std::abs(out.rhs));
  const double diff = std::abs(out.lhs - out.rhs);
  out.rel_err = magnitude > 0.0 ? diff / magnitude : diff;
  out.pass = out.rel_err <= kSwapIdentityTolerance;
  return out;
}

ModulusBoundCheck modulus_bound_check(const LocalProductInstance& inst, const QuadratureConfig& cfg) {
  inst.validate();
  const std::size_t n = inst.a.size();
  if (n > kMaxProbeDim)
    throw Error(ErrorKind::InvalidArgument, "modulus bound probe grid supports n <= 3, got n = " + std::to_string(n));

  ModulusBoundCheck out;
  out.g_abs = std::abs(local_product_direct(inst, cfg).value);

  const double p = pairing_eval(inst.pairing, inst.a, inst.b);
  const double outer = std::abs(sheet_eval(inst.sheet, p));
  const BoxDomain box = box_from_pair(inst.a, inst.b).unoriented();
  const double volume = std::abs(signed_volume(box));
  if (outer == 0.0 || volume == 0.0) {
    out.bound = 0.0;
  } else {
    const double scale = scale_denominator(inst.a, inst.b, inst.k);
    // Grid including both endpoints in every dimension.
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= kProbesPerDim;
    std::vector<double> x(n);
    double sup = 0.0;
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rest = flat;
      for (std::size_t j = 0; j < n; ++j) {
        const auto i = static_cast<double>(rest % kProbesPerDim);
        rest /= kProbesPerDim;
        x[j] = box.lower[j] + (box.upper[j] - box.lower[j]) * (i / (kProbesPerDim - 1));
      }
      sup = std::max(sup, kernel_modulus_or_inf(inst.sheet, inst.k, lp_point_norm(x, inst.k) / scale));
    }
    out.bound = outer * volume * sup;
  }
  out.pass = out.g_abs <= out.bound * (1.0 + 1e-6);
  return out;
}

SheetComparison compare_sheets(const LocalProductInstance& inst, const Sheet& g, const QuadratureConfig& cfg) {
  LocalProductInstance other = inst;
  other.sheet = g;
  SheetComparison out;
  out.g_f = local_product_direct(inst, cfg).value;
  out.g_g = local_product_direct(other, cfg).value;
  out.f_dominated = std::abs(out.g_f) <= std::abs(out.g_g);
  return out;
}

}  // namespace localprod
