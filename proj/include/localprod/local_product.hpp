#pragma once

#include <cstdint>

#include "localprod/core.hpp"
#include "localprod/quadrature.hpp"
#include "localprod/sheets.hpp"

namespace localprod {

/// Arguments of G^k_f(a; b).
struct LocalProductInstance {
  RealVector a;
  RealVector b;
  int k = 1;
  Sheet sheet = Sheet::constant(1.0);
  Pairing pairing = Pairing::dot();

  /// Dimensions, k >= 1, pairing compatibility, and the sheet-specific
  /// requirements on <a,b> (log sheets: > 0 and != 1; reciprocal sheets: != 0).
  /// Sheet violations raise DomainError.
  void validate() const;
};

struct LocalProductValue {
  Complex value;
  /// Quadrature error estimate scaled by the outer factor.
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool budget_exceeded = false;
  std::string method_used;
};

/// ||a||^{k+1} + ||b||^{k+1}; DegenerateScale when both vectors vanish.
double scale_denominator(const RealVector& a, const RealVector& b, int k);

/// f(<a,b>) times the box integral of f(e(i^k l_k(x) / scale)).
///
/// The AbsoluteValue sheet integrates over the unoriented box so that the
/// result matches its closed form |<a,b>| |vol|.
LocalProductValue local_product_direct(const LocalProductInstance& inst, const QuadratureConfig& cfg);

/// Reduced formulas per sheet:
///   Constant(c)     c^2 * signed volume
///   Log             2 pi i^{k+1} log<a,b> / scale * int l_k
///   Identity        <a,b> * int e(i^k l_k / scale)
///   Reciprocal      <a,b>^{-1} * int e(-i^k l_k / scale)
///   ReciprocalLog   scale / (2 pi i^{k+1} log<a,b>) * int 1/l_k
///   AbsoluteValue   |<a,b>| * |signed volume|   (k = 0 mod 4 only)
/// Throws UnsupportedSheetReduction for AbsoluteValue with k != 0 mod 4.
LocalProductValue local_product_closed(const LocalProductInstance& inst, const QuadratureConfig& cfg);

}  // namespace localprod
