#pragma once

#include <optional>
#include <string_view>

#include "localprod/core.hpp"
#include "localprod/local_product.hpp"
#include "localprod/quadrature.hpp"

namespace localprod {

enum class TheoremId { App2, App3 };
enum class Verdict { Holds, Violated, Inconclusive };

std::string_view to_string(TheoremId id) noexcept;
std::string_view to_string(Verdict v) noexcept;
TheoremId theorem_from_name(std::string_view name);
Verdict verdict_from_name(std::string_view name);

/// Inconclusive iff |margin| <= kVerdictGuard * lhs_error.
inline constexpr double kVerdictGuard = 4.0;

Verdict classify_margin(double margin, double lhs_error) noexcept;

struct TheoremReport {
  TheoremId theorem = TheoremId::App2;
  RealVector a{0.0};
  RealVector b{0.0};
  int s = 1;
  /// Norm exponent used in the integrand: 4s (app2) or 4s+3 (app3).
  int k = 4;
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_error = 0.0;
  /// rhs - lhs for app2, lhs - rhs for app3; positive means the inequality holds.
  double margin = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  bool budget_exceeded = false;
};

/// Options shared by both theorem checkers.
struct TheoremOptions {
  /// Accept s = 0 (outside N = {1, 2, ...}); exploration only.
  bool allow_s_zero = false;
};

/// Throws HypothesisViolated unless 0 < <a,b> != 1 and s is admissible.
void check_app2_hypothesis(const RealVector& a, const RealVector& b, int s, const TheoremOptions& opts = {});
/// Throws HypothesisViolated unless a_j, b_j > 0, 0 < <a,b> <= e, <a,b> != 1.
void check_app3_hypothesis(const RealVector& a, const RealVector& b, int s, const TheoremOptions& opts = {});

/// <a,b> / (2 pi |log <a,b>|) * (||a||^{4s+1} + ||b||^{4s+1}) * |prod(|b_i| - |a_i|)|
double app2_rhs(const RealVector& a, const RealVector& b, int s);
/// 2 pi |log <a,b>| * |prod(|b_j| - |a_j|)| / (||a||^{4s+4} + ||b||^{4s+4})
double app3_rhs(const RealVector& a, const RealVector& b, int s);

/// |int l_{4s}| <= app2_rhs.
TheoremReport thm_app2_report(const RealVector& a, const RealVector& b, int s, const QuadratureConfig& cfg,
                              const TheoremOptions& opts = {});
/// |int 1/l_{4s+3}| >= app3_rhs.
TheoremReport thm_app3_report(const RealVector& a, const RealVector& b, int s, const QuadratureConfig& cfg,
                              const TheoremOptions& opts = {});
TheoremReport theorem_report(TheoremId id, const RealVector& a, const RealVector& b, int s,
                             const QuadratureConfig& cfg, const TheoremOptions& opts = {});

struct SwapIdentityCheck {
  Complex lhs;  // G(a; b)
  Complex rhs;  // (-1)^{n+1} G(b; a)
  double rel_err = 0.0;
  bool pass = false;
};

inline constexpr double kSwapIdentityTolerance = 1e-6;

/// G^k_f(a;b) = (-1)^{n+1} G^k_f(b;a) for an antisymmetric pairing and the
/// identity sheet. Throws PairingNotAntisymmetric or InvalidArgument.
SwapIdentityCheck prop_swap_identity_check(const LocalProductInstance& inst, const QuadratureConfig& cfg);

struct ModulusBoundCheck {
  double g_abs = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// |G| <= |f(<a,b>)| * |vol| * sup |f(e(i^k r))| over a 32^n probe grid
/// (n <= 3) spanning the box.
ModulusBoundCheck modulus_bound_check(const LocalProductInstance& inst, const QuadratureConfig& cfg);

/// Both sides of a sheet-dominance comparison |G_f| vs |G_g| on one
/// instance. Reported as data, not asserted.
struct SheetComparison {
  Complex g_f;
  Complex g_g;
  bool f_dominated = false;  // |G_f| <= |G_g|
};

SheetComparison compare_sheets(const LocalProductInstance& inst, const Sheet& g, const QuadratureConfig& cfg);

}  // namespace localprod
