#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "localprod/core.hpp"
#include "localprod/sheets.hpp"

namespace localprod {

/// Integrands the local product and the two inequalities need.
class Kernel {
 public:
  enum class Kind { Unit, LpNorm, ReciprocalLpNorm, SheetPhase };

  static Kernel unit() { return Kernel(Kind::Unit, 1, Sheet::constant(1.0), 1.0); }
  static Kernel lp_norm(int k);
  static Kernel reciprocal_lp_norm(int k);
  /// x -> sheet_phase_eval(f, k, lp_point_norm(x, k) / scale).
  static Kernel sheet_phase(const Sheet& f, int k, double scale);

  Kind kind() const noexcept { return kind_; }
  int k() const noexcept { return k_; }
  const Sheet& sheet() const noexcept { return sheet_; }
  double scale() const noexcept { return scale_; }

  Complex operator()(std::span<const double> x) const;

 private:
  Kernel(Kind kind, int k, Sheet sheet, double scale) : kind_(kind), k_(k), sheet_(sheet), scale_(scale) {}

  Kind kind_;
  int k_;
  Sheet sheet_;
  double scale_;
};

using Integrand = std::function<Complex(std::span<const double>)>;

struct GaussLegendre {
  int nodes_per_dim = 16;
  friend bool operator==(const GaussLegendre&, const GaussLegendre&) = default;
};

struct MonteCarlo {
  std::int64_t samples = 200000;
  std::uint64_t seed = 0xC0FFEE;
  friend bool operator==(const MonteCarlo&, const MonteCarlo&) = default;
};

inline constexpr std::size_t kMaxGaussLegendreDim = 8;
inline constexpr std::size_t kMaxDim = 12;
/// Dimensions up to this use Gauss-Legendre by default, Monte Carlo above.
inline constexpr std::size_t kDefaultGaussLegendreDim = 6;
/// Refinement stops (flagged as budget exceeded) before a level whose tensor
/// grid would exceed this many nodes.
inline constexpr std::int64_t kMaxNodesPerLevel = std::int64_t{1} << 24;

struct QuadratureConfig {
  std::variant<GaussLegendre, MonteCarlo> method = GaussLegendre{};
  int max_levels = 6;
  double rel_tol = 1e-8;

  /// GL for n <= 6, MC above.
  static QuadratureConfig defaults_for(std::size_t n);

  bool is_gauss_legendre() const noexcept { return std::holds_alternative<GaussLegendre>(method); }
  /// Twice the nodes per dimension (GL) or twice the samples (MC).
  QuadratureConfig doubled() const;
  /// Throws InvalidConfig on out-of-range parameters or dimension limits.
  void validate(std::size_t n) const;

  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

struct IntegrationResult {
  Complex value;
  double error_estimate = 0.0;
  std::string method_used;
  std::int64_t evaluations = 1;
  bool budget_exceeded = false;
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule by Newton iteration on P_m.
GaussLegendreRule gauss_legendre_rule(int m);

/// One tensor-product GL pass with m nodes per dimension. error_estimate is 0.
IntegrationResult gauss_legendre_integrate(const Integrand& f, const BoxDomain& box, int m);

/// Doubles the nodes per dimension from start_nodes until successive levels
/// agree to rel_tol. Sets budget_exceeded when max_levels runs out first.
IntegrationResult refine_integrate(const Integrand& f, const BoxDomain& box, double rel_tol, int max_levels,
                                   int start_nodes = GaussLegendre{}.nodes_per_dim);
IntegrationResult refine_integrate(const Kernel& kernel, const BoxDomain& box, double rel_tol, int max_levels,
                                   int start_nodes = GaussLegendre{}.nodes_per_dim);

/// Uniform sampling over the unoriented box, mean times signed volume.
/// Deterministic for a fixed (seed, samples).
IntegrationResult mc_integrate(const Integrand& f, const BoxDomain& box, std::int64_t samples, std::uint64_t seed);
IntegrationResult mc_integrate(const Kernel& kernel, const BoxDomain& box, std::int64_t samples, std::uint64_t seed);

/// Signed integral of f over box, dispatching on cfg.method.
IntegrationResult integrate_box(const Integrand& f, const BoxDomain& box, const QuadratureConfig& cfg);
IntegrationResult integrate_box(const Kernel& kernel, const BoxDomain& box, const QuadratureConfig& cfg);

}  // namespace localprod
