#include "barrierlab/hp/log_magnitude.hpp"

namespace barrierlab::hp {

Real wrap_angle(const Real& a) {
  Real tp = pi(a.bits()) * 2.0;
  Real r = a - tp * floor(a / tp);
  if (r > pi(a.bits())) r -= tp;
  return r;
}

LogMagnitude::LogMagnitude(Real log_abs, Real arg) : log_abs_(std::move(log_abs)), arg_(wrap_angle(arg)) {}

LogMagnitude LogMagnitude::from_complex(const Complex& z) {
  if (z.is_zero()) return zero(z.bits());
  return LogMagnitude(hp::log(abs(z)), hp::arg(z));
}

LogMagnitude LogMagnitude::zero(int bits) {
  LogMagnitude r(Real(0L, bits), Real(0L, bits));
  r.zero_ = true;
  return r;
}

bool LogMagnitude::fits() const {
  if (zero_) return true;
  // mpfr's default exponent range is +-(2^30 - 1) binary digits.
  return abs(log_abs_) < 5e8;
}

Complex LogMagnitude::to_complex() const {
  if (zero_) return Complex(Real(0L, bits()), Real(0L, bits()));
  if (!fits()) throw NumericError(ErrorCode::Overflow, "LogMagnitude out of representable range");
  return polar(exp(log_abs_), arg_);
}

LogMagnitude LogMagnitude::operator*(const LogMagnitude& o) const {
  if (zero_ || o.zero_) return zero(max_bits(log_abs_, o.log_abs_));
  return LogMagnitude(log_abs_ + o.log_abs_, arg_ + o.arg_);
}

LogMagnitude LogMagnitude::operator/(const LogMagnitude& o) const {
  if (o.zero_) throw NumericError(ErrorCode::Overflow, "LogMagnitude division by zero");
  if (zero_) return *this;
  return LogMagnitude(log_abs_ - o.log_abs_, arg_ - o.arg_);
}

LogMagnitude LogMagnitude::operator+(const LogMagnitude& o) const {
  if (zero_) return o;
  if (o.zero_) return *this;
  const LogMagnitude& big = log_abs_ >= o.log_abs_ ? *this : o;
  const LogMagnitude& small = log_abs_ >= o.log_abs_ ? o : *this;
  // big * (1 + small/big)
  Complex ratio = polar(exp(small.log_abs_ - big.log_abs_), small.arg_ - big.arg_);
  ratio += Real(1L, ratio.bits());
  if (ratio.is_zero()) return zero(bits());
  return LogMagnitude(big.log_abs_ + hp::log(abs(ratio)), big.arg_ + hp::arg(ratio));
}

LogMagnitude LogMagnitude::pow(const Real& e) const {
  if (zero_) return *this;
  return LogMagnitude(log_abs_ * e, arg_ * e);
}

Complex LogMagnitude::log() const {
  if (zero_) throw NumericError(ErrorCode::Overflow, "log of zero");
  return Complex(log_abs_, arg_);
}

}  // namespace barrierlab::hp
