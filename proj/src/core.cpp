#include "localprod/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "localprod/error.hpp"

namespace localprod {

namespace {

void require_finite_components(std::span<const double> v, const char* what) {
  if (v.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must have at least one component");
  for (double c : v) {
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " has a non-finite component");
  }
}

double ipow(double x, int k) noexcept {
  double result = 1.0;
  double base = x;
  unsigned e = static_cast<unsigned>(k);
  while (e != 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

}  // namespace

RealVector::RealVector(std::vector<double> components) : components_(std::move(components)) {
  require_finite_components(components_, "vector");
}

RealVector::RealVector(std::initializer_list<double> components)
    : RealVector(std::vector<double>(components)) {}

RealVector RealVector::scaled(double t) const {
  std::vector<double> out(components_);
  for (double& c : out) c *= t;
  return RealVector(std::move(out));
}

Pairing Pairing::dot() { return Pairing(Kind::DotProduct, 0, {}); }

Pairing Pairing::symplectic2d() { return Pairing(Kind::Symplectic2D, 2, {}); }

Pairing Pairing::bilinear(std::size_t n, std::vector<double> row_major) {
  if (n == 0 || row_major.size() != n * n)
    throw Error(ErrorKind::InvalidArgument, "bilinear pairing matrix must be square and non-empty");
  for (double m : row_major) {
    if (!std::isfinite(m)) throw Error(ErrorKind::InvalidArgument, "bilinear pairing matrix has a non-finite entry");
  }
  return Pairing(Kind::CustomBilinear, n, std::move(row_major));
}

void Pairing::require_compatible(std::size_t n) const {
  switch (kind_) {
    case Kind::DotProduct:
      return;
    case Kind::Symplectic2D:
      if (n != 2) throw Error(ErrorKind::DimensionMismatch, "symplectic pairing requires n = 2, got n = " + std::to_string(n));
      return;
    case Kind::CustomBilinear:
      if (n != dim_)
        throw Error(ErrorKind::DimensionMismatch,
                    "bilinear pairing is " + std::to_string(dim_) + "x" + std::to_string(dim_) + ", vectors have n = " +
                        std::to_string(n));
      return;
  }
}

BoxDomain BoxDomain::from_bounds(std::vector<double> lower, std::vector<double> upper) {
  if (lower.size() != upper.size())
    throw Error(ErrorKind::DimensionMismatch, "box bounds have different lengths");
  if (lower.empty()) throw Error(ErrorKind::InvalidArgument, "box must have at least one dimension");
  BoxDomain box;
  box.orientation.reserve(lower.size());
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || lower[j] < 0.0 || upper[j] < 0.0)
      throw Error(ErrorKind::InvalidArgument, "box bounds must be finite and nonnegative");
    box.orientation.push_back(upper[j] < lower[j] ? -1 : 1);
  }
  box.lower = std::move(lower);
  box.upper = std::move(upper);
  return box;
}

bool BoxDomain::has_zero_width() const noexcept {
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (lower[j] == upper[j]) return true;
  }
  return false;
}

BoxDomain BoxDomain::unoriented() const {
  BoxDomain out;
  out.lower.resize(dim());
  out.upper.resize(dim());
  out.orientation.assign(dim(), 1);
  for (std::size_t j = 0; j < dim(); ++j) {
    out.lower[j] = std::min(lower[j], upper[j]);
    out.upper[j] = std::max(lower[j], upper[j]);
  }
  return out;
}

int BoxDomain::orientation_product() const noexcept {
  int sign = 1;
  for (int s : orientation) sign *= s;
  return sign;
}

double pairing_eval(const Pairing& p, const RealVector& a, const RealVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch,
                "vectors have lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  const std::size_t n = a.size();
  p.require_compatible(n);
  switch (p.kind()) {
    case Pairing::Kind::DotProduct: {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += a[j] * b[j];
      return sum;
    }
    case Pairing::Kind::Symplectic2D:
      return a[0] * b[1] - a[1] * b[0];
    case Pairing::Kind::CustomBilinear: {
      const auto m = p.matrix();
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += m[i * n + j] * b[j];
        sum += a[i] * row;
      }
      return sum;
    }
  }
  return 0.0;
}

double euclidean_norm(const RealVector& a) noexcept {
  double scale = 0.0;
  for (double c : a.components()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double c : a.components()) {
    const double t = c / scale;
    sum += t * t;
  }
  return scale * std::sqrt(sum);
}

double lp_point_norm(std::span<const double> x, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "norm exponent k must be >= 1, got " + std::to_string(k));
  // Factor out the largest magnitude so x^k neither overflows nor underflows.
  double scale = 0.0;
  for (double c : x) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double c : x) sum += ipow(c / scale, k);
  if (sum < 0.0) {
    throw Error(ErrorKind::NegativeBaseOddRoot, "odd root of negative power sum");
  }
  if (k == 1) return scale * sum;
  if (k == 2) return scale * std::sqrt(sum);
  return scale * std::pow(sum, 1.0 / k);
}

BoxDomain box_from_pair(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch,
                "vectors have lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  std::vector<double> lower(a.size());
  std::vector<double> upper(b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    lower[j] = std::abs(a[j]);
    upper[j] = std::abs(b[j]);
  }
  return BoxDomain::from_bounds(std::move(lower), std::move(upper));
}

double signed_volume(const BoxDomain& box) noexcept {
  double volume = 1.0;
  for (std::size_t j = 0; j < box.dim(); ++j) volume *= box.upper[j] - box.lower[j];
  return volume;
}

Complex unit_phase_e(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidArgument, "unit phase argument must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double log_modulus = -two_pi * z.imag();
  if (log_modulus > std::log(std::numeric_limits<double>::max()))
    throw Error(ErrorKind::Overflow, "e(z) modulus exp(" + std::to_string(log_modulus) + ") is not representable");
  // Reduce the real part to [-1/2, 1/2] before scaling by 2 pi.
  const double turns = z.real() - std::nearbyint(z.real());
  const double modulus = std::exp(log_modulus);
  if (z.real() == 0.0) return {modulus, 0.0};
  return {modulus * std::cos(two_pi * turns), modulus * std::sin(two_pi * turns)};
}

}  // namespace localprod
