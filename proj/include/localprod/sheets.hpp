#pragma once

#include <string_view>

#include "localprod/core.hpp"

namespace localprod {

/// The fixed set of sheet functions f composed into the local product.
class Sheet {
 public:
  enum class Kind { Constant, Identity, Reciprocal, Log, ReciprocalLog, AbsoluteValue };

  static Sheet constant(double c = 1.0);
  static Sheet identity() { return Sheet(Kind::Identity); }
  static Sheet reciprocal() { return Sheet(Kind::Reciprocal); }
  static Sheet log() { return Sheet(Kind::Log); }
  static Sheet reciprocal_log() { return Sheet(Kind::ReciprocalLog); }
  static Sheet absolute_value() { return Sheet(Kind::AbsoluteValue); }

  /// Accepts the serialized names: const, id, recip, log, reciplog, abs.
  /// "const" maps to Constant(1).
  static Sheet from_name(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  double constant_value() const noexcept { return c_; }
  std::string_view name() const noexcept;

  friend bool operator==(const Sheet&, const Sheet&) = default;

 private:
  explicit Sheet(Kind kind, double c = 0.0) : kind_(kind), c_(c) {}

  Kind kind_;
  double c_;
};

/// f(z) for the outer factor f(<a,b>).
Complex sheet_eval(const Sheet& f, Complex z);

/// i^k for k >= 1.
Complex phase_power_i(int k);

/// f(e(i^k r)) with logarithmic sheets unwrapped: log(e(q)) := 2 pi i q.
///
/// Overflow is raised when e^{+-2 pi r} leaves the double range
/// (k odd under Identity/Reciprocal/AbsoluteValue).
Complex sheet_phase_eval(const Sheet& f, int k, double r);

}  // namespace localprod
