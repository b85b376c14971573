#include "localprod/sheets.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "localprod/error.hpp"

namespace localprod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double positive_real_or_throw(Complex z, const char* sheet) {
  if (z.imag() != 0.0 || !(z.real() > 0.0))
    throw Error(ErrorKind::DomainError, std::string(sheet) + " sheet requires a positive real argument");
  return z.real();
}

}  // namespace

Sheet Sheet::constant(double c) {
  if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "constant sheet value must be finite");
  return Sheet(Kind::Constant, c);
}

Sheet Sheet::from_name(std::string_view name) {
  if (name == "const") return constant(1.0);
  if (name == "id") return identity();
  if (name == "recip") return reciprocal();
  if (name == "log") return log();
  if (name == "reciplog") return reciprocal_log();
  if (name == "abs") return absolute_value();
  throw Error(ErrorKind::ValidationError, "unknown sheet \"" + std::string(name) + "\"");
}

std::string_view Sheet::name() const noexcept {
  switch (kind_) {
    case Kind::Constant: return "const";
    case Kind::Identity: return "id";
    case Kind::Reciprocal: return "recip";
    case Kind::Log: return "log";
    case Kind::ReciprocalLog: return "reciplog";
    case Kind::AbsoluteValue: return "abs";
  }
  return "";
}

Complex sheet_eval(const Sheet& f, Complex z) {
  switch (f.kind()) {
    case Sheet::Kind::Constant:
      return f.constant_value();
    case Sheet::Kind::Identity:
      return z;
    case Sheet::Kind::Reciprocal:
      if (z == Complex{}) throw Error(ErrorKind::DomainError, "reciprocal sheet at zero");
      return 1.0 / z;
    case Sheet::Kind::Log:
      return std::log(positive_real_or_throw(z, "log"));
    case Sheet::Kind::ReciprocalLog: {
      const double x = positive_real_or_throw(z, "reciprocal-log");
      if (x == 1.0) throw Error(ErrorKind::DomainError, "reciprocal-log sheet at 1 (log 1 = 0)");
      return 1.0 / std::log(x);
    }
    case Sheet::Kind::AbsoluteValue:
      return std::abs(z);
  }
  return {};
}

Complex phase_power_i(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1, got " + std::to_string(k));
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Complex sheet_phase_eval(const Sheet& f, int k, double r) {
  if (!std::isfinite(r) || r < 0.0)
    throw Error(ErrorKind::InvalidArgument, "phase argument r must be finite and nonnegative");
  const Complex q = phase_power_i(k) * r;
  switch (f.kind()) {
    case Sheet::Kind::Constant:
      return f.constant_value();
    case Sheet::Kind::Identity:
      return unit_phase_e(q);
    case Sheet::Kind::Reciprocal:
      return unit_phase_e(-q);
    case Sheet::Kind::Log:
      return Complex{0.0, kTwoPi} * q;
    case Sheet::Kind::ReciprocalLog:
      if (r == 0.0) throw Error(ErrorKind::DomainError, "reciprocal-log sheet at e(0) = 1");
      return 1.0 / (Complex{0.0, kTwoPi} * q);
    case Sheet::Kind::AbsoluteValue: {
      const double log_modulus = -kTwoPi * q.imag();
      if (log_modulus > std::log(std::numeric_limits<double>::max()))
        throw Error(ErrorKind::Overflow, "|e(q)| is not representable");
      return std::exp(log_modulus);
    }
  }
  return {};
}

}  // namespace localprod
