#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace localprod {

using Complex = std::complex<double>;

/// A finite, non-empty element of R^n.
class RealVector {
 public:
  explicit RealVector(std::vector<double> components);
  RealVector(std::initializer_list<double> components);

  std::size_t size() const noexcept { return components_.size(); }
  double operator[](std::size_t j) const { return components_[j]; }
  std::span<const double> components() const noexcept { return components_; }

  RealVector scaled(double t) const;

  friend bool operator==(const RealVector&, const RealVector&) = default;

 private:
  std::vector<double> components_;
};

/// Bilinear form standing in for the inner product.
///
/// The theorems use the dot product; the antisymmetric kinds exist so the
/// swap identity has instances where <a,b> = -<b,a> holds non-trivially.
class Pairing {
 public:
  enum class Kind { DotProduct, Symplectic2D, CustomBilinear };

  static Pairing dot();
  static Pairing symplectic2d();
  /// Row-major n x n matrix M; evaluates a^T M b.
  static Pairing bilinear(std::size_t n, std::vector<double> row_major);

  Kind kind() const noexcept { return kind_; }
  std::size_t matrix_dim() const noexcept { return dim_; }
  std::span<const double> matrix() const noexcept { return matrix_; }

  /// Throws DimensionMismatch when this pairing cannot act on R^n.
  void require_compatible(std::size_t n) const;

  friend bool operator==(const Pairing&, const Pairing&) = default;

 private:
  Pairing(Kind kind, std::size_t dim, std::vector<double> matrix)
      : kind_(kind), dim_(dim), matrix_(std::move(matrix)) {}

  Kind kind_;
  std::size_t dim_;
  std::vector<double> matrix_;
};

/// Oriented box prod_j [lower_j, upper_j] with lower = |a_j|, upper = |b_j|.
///
/// orientation_j is the sign of upper_j - lower_j (+1 for zero width); the
/// integral over a reversed dimension picks up that sign.
struct BoxDomain {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> orientation;

  /// Validates nonnegative finite bounds of equal length and derives signs.
  static BoxDomain from_bounds(std::vector<double> lower, std::vector<double> upper);

  std::size_t dim() const noexcept { return lower.size(); }
  bool has_zero_width() const noexcept;
  /// Same region with every dimension running low-to-high.
  BoxDomain unoriented() const;
  /// Product of orientation signs.
  int orientation_product() const noexcept;

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;
};

double pairing_eval(const Pairing& p, const RealVector& a, const RealVector& b);

double euclidean_norm(const RealVector& a) noexcept;

/// (sum_j x_j^k)^(1/k) for integer k >= 1.
double lp_point_norm(std::span<const double> x, int k);

BoxDomain box_from_pair(const RealVector& a, const RealVector& b);

/// prod_j (upper_j - lower_j); negative when an odd number of dims are reversed.
double signed_volume(const BoxDomain& box) noexcept;

/// e(z) = exp(2 pi i z). Throws Overflow when |e(z)| is not representable.
Complex unit_phase_e(Complex z);

}  // namespace localprod
