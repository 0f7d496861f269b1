#pragma once

#include "barrierlab/hp/complex.hpp"

namespace barrierlab::hp {

// exp(log_abs) * e^{i arg} with arg in (-pi, pi]. Used for values whose
// modulus overflows any fixed exponent range.
class LogMagnitude {
 public:
  LogMagnitude(Real log_abs, Real arg);
  static LogMagnitude from_complex(const Complex& z);
  static LogMagnitude zero(int bits);

  const Real& log_abs() const { return log_abs_; }
  const Real& arg() const { return arg_; }
  bool is_zero() const { return zero_; }
  int bits() const { return log_abs_.bits(); }

  // Throws Overflow when log_abs is beyond the representable range.
  Complex to_complex() const;
  bool fits() const;

  LogMagnitude operator*(const LogMagnitude& o) const;
  LogMagnitude operator/(const LogMagnitude& o) const;
  LogMagnitude operator+(const LogMagnitude& o) const;
  LogMagnitude pow(const Real& e) const;
  // log of the value on the principal branch
  Complex log() const;

 private:
  Real log_abs_, arg_;
  bool zero_ = false;
};

// Reduces an angle to (-pi, pi].
Real wrap_angle(const Real& a);

}  // namespace barrierlab::hp
