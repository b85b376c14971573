#include "localprod/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "localprod/error.hpp"

namespace localprod {

namespace {

// Neumaier-compensated running sum; fixed evaluation order keeps it bit-reproducible.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

Complex evaluate_checked(const Integrand& f, std::span<const double> x) {
  Complex value;
  try {
    value = f(x);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
    throw Error(ErrorKind::NonFiniteIntegrand, std::string("kernel overflowed: ") + e.what());
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    std::ostringstream msg;
    msg << "integrand is not finite at x = (";
    for (std::size_t j = 0; j < x.size(); ++j) msg << (j ? ", " : "") << x[j];
    msg << ")";
    throw Error(ErrorKind::NonFiniteIntegrand, msg.str());
  }
  return value;
}

IntegrationResult zero_width_result(const char* method) {
  IntegrationResult r;
  r.value = 0.0;
  r.error_estimate = 0.0;
  r.method_used = std::string(method) + "(zero-width)";
  r.evaluations = 1;
  return r;
}

// m^n, or -1 when it exceeds the per-level node cap.
std::int64_t tensor_size(int m, std::size_t n) {
  std::int64_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    total *= m;
    if (total > kMaxNodesPerLevel) return -1;
  }
  return total;
}

Integrand as_integrand(const Kernel& kernel) {
  return [kernel](std::span<const double> x) { return kernel(x); };
}

}  // namespace

Kernel Kernel::lp_norm(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "kernel exponent k must be >= 1");
  return Kernel(Kind::LpNorm, k, Sheet::constant(1.0), 1.0);
}

Kernel Kernel::reciprocal_lp_norm(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "kernel exponent k must be >= 1");
  return Kernel(Kind::ReciprocalLpNorm, k, Sheet::constant(1.0), 1.0);
}

Kernel Kernel::sheet_phase(const Sheet& f, int k, double scale) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "kernel exponent k must be >= 1");
  if (!std::isfinite(scale) || !(scale > 0.0))
    throw Error(ErrorKind::InvalidArgument, "sheet-phase scale must be positive and finite");
  return Kernel(Kind::SheetPhase, k, f, scale);
}

Complex Kernel::operator()(std::span<const double> x) const {
  switch (kind_) {
    case Kind::Unit:
      return 1.0;
    case Kind::LpNorm:
      return lp_point_norm(x, k_);
    case Kind::ReciprocalLpNorm:
      return 1.0 / lp_point_norm(x, k_);
    case Kind::SheetPhase:
      return sheet_phase_eval(sheet_, k_, lp_point_norm(x, k_) / scale_);
  }
  return {};
}

QuadratureConfig QuadratureConfig::defaults_for(std::size_t n) {
  QuadratureConfig cfg;
  if (n > kDefaultGaussLegendreDim) cfg.method = MonteCarlo{};
  return cfg;
}

QuadratureConfig QuadratureConfig::doubled() const {
  QuadratureConfig out = *this;
  if (auto* gl = std::get_if<GaussLegendre>(&out.method)) {
    gl->nodes_per_dim *= 2;
  } else {
    std::get<MonteCarlo>(out.method).samples *= 2;
  }
  return out;
}

void QuadratureConfig::validate(std::size_t n) const {
  if (n == 0 || n > kMaxDim)
    throw Error(ErrorKind::InvalidConfig, "dimension n = " + std::to_string(n) + " outside [1, 12]");
  if (max_levels < 1) throw Error(ErrorKind::InvalidConfig, "max_levels must be >= 1");
  if (!std::isfinite(rel_tol) || !(rel_tol > 0.0)) throw Error(ErrorKind::InvalidConfig, "rel_tol must be positive");
  if (const auto* gl = std::get_if<GaussLegendre>(&method)) {
    if (gl->nodes_per_dim < 2) throw Error(ErrorKind::InvalidConfig, "Gauss-Legendre needs >= 2 nodes per dimension");
    if (n > kMaxGaussLegendreDim)
      throw Error(ErrorKind::InvalidConfig,
                  "Gauss-Legendre is limited to n <= 8 (got n = " + std::to_string(n) + "); use Monte Carlo");
  } else {
    if (std::get<MonteCarlo>(method).samples < 100)
      throw Error(ErrorKind::InvalidConfig, "Monte Carlo needs >= 100 samples");
  }
}

GaussLegendreRule gauss_legendre_rule(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre rule needs m >= 1");
  GaussLegendreRule rule;
  rule.nodes.assign(static_cast<std::size_t>(m), 0.0);
  rule.weights.assign(static_cast<std::size_t>(m), 0.0);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p_curr = 1.0;
      double p_prev = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p_prev2 = p_prev;
        p_prev = p_curr;
        p_curr = ((2.0 * j - 1.0) * z * p_prev - (j - 1.0) * p_prev2) / j;
      }
      derivative = m * (z * p_curr - p_prev) / (z * z - 1.0);
      const double step = p_curr / derivative;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    if (m % 2 == 1 && i == half - 1) z = 0.0;
    const double w = 2.0 / ((1.0 - z * z) * derivative * derivative);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(m - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(m - 1 - i)] = w;
  }
  return rule;
}

IntegrationResult gauss_legendre_integrate(const Integrand& f, const BoxDomain& box, int m) {
  if (box.has_zero_width()) return zero_width_result("gauss-legendre");
  const std::size_t n = box.dim();
  const std::int64_t total = tensor_size(m, n);
  if (total < 0) throw Error(ErrorKind::InvalidConfig, "tensor grid exceeds the per-level node cap");

  // Integrate over the unoriented box, then apply the orientation sign, so a
  // flipped dimension negates the result exactly.
  const BoxDomain u = box.unoriented();
  const GaussLegendreRule rule = gauss_legendre_rule(m);
  std::vector<std::vector<double>> coords(n, std::vector<double>(static_cast<std::size_t>(m)));
  double jacobian = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double half_width = 0.5 * (u.upper[j] - u.lower[j]);
    const double center = 0.5 * (u.upper[j] + u.lower[j]);
    for (int i = 0; i < m; ++i) coords[j][static_cast<std::size_t>(i)] = center + half_width * rule.nodes[static_cast<std::size_t>(i)];
    jacobian *= half_width;
  }

  std::vector<std::size_t> index(n, 0);
  std::vector<double> point(n);
  for (std::size_t j = 0; j < n; ++j) point[j] = coords[j][0];
  CompensatedSum re;
  CompensatedSum im;
  for (std::int64_t count = 0; count < total; ++count) {
    double weight = 1.0;
    for (std::size_t j = 0; j < n; ++j) weight *= rule.weights[index[j]];
    const Complex value = evaluate_checked(f, point);
    re.add(weight * value.real());
    im.add(weight * value.imag());
    // Odometer increment, first dimension fastest.
    for (std::size_t j = 0; j < n; ++j) {
      if (++index[j] < static_cast<std::size_t>(m)) {
        point[j] = coords[j][index[j]];
        break;
      }
      index[j] = 0;
      point[j] = coords[j][0];
    }
  }

  const double factor = jacobian * box.orientation_product();
  IntegrationResult r;
  r.value = Complex{re.value() * factor, im.value() * factor};
  r.error_estimate = 0.0;
  r.method_used = "gauss-legendre(m=" + std::to_string(m) + ")";
  r.evaluations = total;
  return r;
}

IntegrationResult refine_integrate(const Integrand& f, const BoxDomain& box, double rel_tol, int max_levels,
                                   int start_nodes) {
  if (!std::isfinite(rel_tol) || !(rel_tol > 0.0)) throw Error(ErrorKind::InvalidConfig, "rel_tol must be positive");
  if (max_levels < 1) throw Error(ErrorKind::InvalidConfig, "max_levels must be >= 1");
  if (start_nodes < 1) throw Error(ErrorKind::InvalidConfig, "start_nodes must be >= 1");
  if (box.has_zero_width()) return zero_width_result("gauss-legendre");

  const auto converged = [rel_tol](Complex current, double diff) {
    return diff <= rel_tol * std::max(std::abs(current), 1e-300);
  };

  int m = start_nodes;
  IntegrationResult current = gauss_legendre_integrate(f, box, m);
  std::int64_t evaluations = current.evaluations;
  int levels = 1;
  double diff = 0.0;
  bool met = false;

  if (max_levels == 1) {
    // No finer level allowed: estimate against the half-resolution rule.
    const IntegrationResult coarse = gauss_legendre_integrate(f, box, std::max(1, m / 2));
    evaluations += coarse.evaluations;
    diff = std::abs(current.value - coarse.value);
    met = converged(current.value, diff);
  } else {
    while (levels < max_levels) {
      if (tensor_size(2 * m, box.dim()) < 0) break;
      m *= 2;
      IntegrationResult finer = gauss_legendre_integrate(f, box, m);
      evaluations += finer.evaluations;
      ++levels;
      diff = std::abs(finer.value - current.value);
      current = std::move(finer);
      if (converged(current.value, diff)) {
        met = true;
        break;
      }
    }
  }

  current.error_estimate = diff;
  current.evaluations = evaluations;
  current.budget_exceeded = !met;
  current.method_used = "gauss-legendre(m=" + std::to_string(m) + ",levels=" + std::to_string(levels) + ")";
  return current;
}

IntegrationResult refine_integrate(const Kernel& kernel, const BoxDomain& box, double rel_tol, int max_levels,
                                   int start_nodes) {
  return refine_integrate(as_integrand(kernel), box, rel_tol, max_levels, start_nodes);
}

IntegrationResult mc_integrate(const Integrand& f, const BoxDomain& box, std::int64_t samples, std::uint64_t seed) {
  if (samples < 100) throw Error(ErrorKind::InvalidConfig, "Monte Carlo needs >= 100 samples");
  if (box.has_zero_width()) return zero_width_result("monte-carlo");
  const std::size_t n = box.dim();
  const BoxDomain u = box.unoriented();
  std::vector<double> width(n);
  for (std::size_t j = 0; j < n; ++j) width[j] = u.upper[j] - u.lower[j];

  // Draws are taken from the open interval (0, 1), so a box whose lower
  // corner is the origin never samples the origin itself.
  std::mt19937_64 rng(seed);
  std::vector<double> point(n);
  Complex mean{0.0, 0.0};
  double m2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double unit = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
      point[j] = u.lower[j] + unit * width[j];
    }
    const Complex value = evaluate_checked(f, point);
    const Complex delta = value - mean;
    mean += delta / static_cast<double>(i + 1);
    const Complex delta_after = value - mean;
    m2 += delta.real() * delta_after.real() + delta.imag() * delta_after.imag();
  }

  const double volume = signed_volume(box);
  const double variance = m2 / static_cast<double>(samples - 1);
  IntegrationResult r;
  r.value = mean * volume;
  r.error_estimate = std::sqrt(std::max(variance, 0.0) / static_cast<double>(samples)) * std::abs(volume);
  r.method_used = "monte-carlo(samples=" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
  r.evaluations = samples;
  return r;
}

IntegrationResult mc_integrate(const Kernel& kernel, const BoxDomain& box, std::int64_t samples, std::uint64_t seed) {
  return mc_integrate(as_integrand(kernel), box, samples, seed);
}

IntegrationResult integrate_box(const Integrand& f, const BoxDomain& box, const QuadratureConfig& cfg) {
  cfg.validate(box.dim());
  if (const auto* gl = std::get_if<GaussLegendre>(&cfg.method)) {
    return refine_integrate(f, box, cfg.rel_tol, cfg.max_levels, gl->nodes_per_dim);
  }
  const auto& mc = std::get<MonteCarlo>(cfg.method);
  return mc_integrate(f, box, mc.samples, mc.seed);
}

IntegrationResult integrate_box(const Kernel& kernel, const BoxDomain& box, const QuadratureConfig& cfg) {
  return integrate_box(as_integrand(kernel), box, cfg);
}

}  // namespace localprod
