#include "localprod/local_product.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "localprod/error.hpp"

namespace localprod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

LocalProductValue scaled_result(Complex factor, const IntegrationResult& integral) {
  LocalProductValue out;
  out.value = factor * integral.value;
  out.error_estimate = std::abs(factor) * integral.error_estimate;
  out.evaluations = integral.evaluations;
  out.budget_exceeded = integral.budget_exceeded;
  out.method_used = integral.method_used;
  return out;
}

LocalProductValue exact_result(Complex value) {
  LocalProductValue out;
  out.value = value;
  out.method_used = "closed-form";
  return out;
}

}  // namespace

void LocalProductInstance::validate() const {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch,
                "vectors have lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1, got " + std::to_string(k));
  pairing.require_compatible(a.size());
  const double p = pairing_eval(pairing, a, b);
  switch (sheet.kind()) {
    case Sheet::Kind::Log:
    case Sheet::Kind::ReciprocalLog:
      if (!(p > 0.0)) throw Error(ErrorKind::DomainError, "log sheets require <a,b> > 0");
      if (p == 1.0) throw Error(ErrorKind::DomainError, "log sheets require <a,b> != 1");
      break;
    case Sheet::Kind::Reciprocal:
      if (p == 0.0) throw Error(ErrorKind::DomainError, "reciprocal sheet requires <a,b> != 0");
      break;
    default:
      break;
  }
}

double scale_denominator(const RealVector& a, const RealVector& b, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  const double na = euclidean_norm(a);
  const double nb = euclidean_norm(b);
  if (na == 0.0 && nb == 0.0) throw Error(ErrorKind::DegenerateScale, "both vectors are zero");
  const double scale = std::pow(na, k + 1) + std::pow(nb, k + 1);
  if (!std::isfinite(scale) || !(scale > 0.0))
    throw Error(ErrorKind::DegenerateScale, "scale denominator is not a positive finite number");
  return scale;
}

LocalProductValue local_product_direct(const LocalProductInstance& inst, const QuadratureConfig& cfg) {
  inst.validate();
  const double p = pairing_eval(inst.pairing, inst.a, inst.b);
  const Complex outer = sheet_eval(inst.sheet, p);
  const double scale = scale_denominator(inst.a, inst.b, inst.k);
  BoxDomain box = box_from_pair(inst.a, inst.b);
  if (inst.sheet.kind() == Sheet::Kind::AbsoluteValue) box = box.unoriented();
  const Kernel kernel = Kernel::sheet_phase(inst.sheet, inst.k, scale);
  return scaled_result(outer, integrate_box(kernel, box, cfg));
}

LocalProductValue local_product_closed(const LocalProductInstance& inst, const QuadratureConfig& cfg) {
  inst.validate();
  const double p = pairing_eval(inst.pairing, inst.a, inst.b);
  const BoxDomain box = box_from_pair(inst.a, inst.b);
  const int k = inst.k;

  switch (inst.sheet.kind()) {
    case Sheet::Kind::Constant: {
      const double c = inst.sheet.constant_value();
      return exact_result(c * c * signed_volume(box));
    }
    case Sheet::Kind::AbsoluteValue:
      if (k % 4 != 0)
        throw Error(ErrorKind::UnsupportedSheetReduction,
                    "absolute-value sheet has a closed form only for k = 0 mod 4 (k = " + std::to_string(k) + ")");
      return exact_result(std::abs(p) * std::abs(signed_volume(box)));
    case Sheet::Kind::Log: {
      const double scale = scale_denominator(inst.a, inst.b, k);
      const Complex factor = kTwoPi * phase_power_i(k + 1) * std::log(p) / scale;
      return scaled_result(factor, integrate_box(Kernel::lp_norm(k), box, cfg));
    }
    case Sheet::Kind::ReciprocalLog: {
      const double scale = scale_denominator(inst.a, inst.b, k);
      const Complex factor = scale / (kTwoPi * phase_power_i(k + 1) * std::log(p));
      return scaled_result(factor, integrate_box(Kernel::reciprocal_lp_norm(k), box, cfg));
    }
    case Sheet::Kind::Identity: {
      const double scale = scale_denominator(inst.a, inst.b, k);
      return scaled_result(p, integrate_box(Kernel::sheet_phase(Sheet::identity(), k, scale), box, cfg));
    }
    case Sheet::Kind::Reciprocal: {
      const double scale = scale_denominator(inst.a, inst.b, k);
      return scaled_result(1.0 / p, integrate_box(Kernel::sheet_phase(Sheet::reciprocal(), k, scale), box, cfg));
    }
  }
  throw Error(ErrorKind::UnsupportedSheetReduction, "no closed form for this sheet");
}

}  // namespace localprod
