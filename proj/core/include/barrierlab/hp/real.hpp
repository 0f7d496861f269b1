#pragma once

#include <mpfr.h>

#include <climits>
#include <cstdint>
#include <string>
#include <utility>

#include "barrierlab/errors.hpp"

namespace barrierlab::hp {

constexpr int kMinPrecision = 64;
constexpr int kDefaultPrecision = 256;

// Precision used when a Real is built from a machine number without an
// explicit precision. Per thread; scans set it inside each worker.
int default_precision();
void set_default_precision(int bits);

class PrecisionScope {
 public:
  explicit PrecisionScope(int bits) : saved_(default_precision()) { set_default_precision(bits); }
  ~PrecisionScope() { set_default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

class Real {
 public:
  Real() : Real(0L, default_precision()) {}
  explicit Real(int bits_tag, std::nullptr_t) { init(bits_tag); }
  Real(double v, int bits) {
    init(bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
  }
  Real(long v, int bits) {
    init(bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  Real(int v, int bits) : Real(static_cast<long>(v), bits) {}
  Real(double v) : Real(v, default_precision()) {}  // NOLINT
  Real(int v) : Real(static_cast<long>(v), default_precision()) {}  // NOLINT
  Real(long v) : Real(v, default_precision()) {}  // NOLINT
  Real(const std::string& s, int bits);
  Real(const mpfr_t src, int bits) {
    init(bits);
    mpfr_set(v_, src, MPFR_RNDN);
  }

  Real(const Real& o) {
    init(o.bits());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (!v_[0]._mpfr_d) init(o.bits());
      else if (bits() != o.bits()) mpfr_set_prec(v_, o.bits());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~Real() {
    if (v_[0]._mpfr_d) mpfr_clear(v_);
  }

  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  // Rounds to a new precision in place.
  void set_bits(int b) { mpfr_prec_round(v_, b, MPFR_RNDN); }
  Real with_bits(int b) const {
    Real r(b, nullptr);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent() const { return is_zero() ? LONG_MIN : mpfr_get_exp(v_); }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }

  // Scientific notation with `digits` significant digits.
  std::string str(int digits = 0) const;

  Real operator-() const {
    Real r(bits(), nullptr);
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { return apply2(mpfr_add, o); }
  Real& operator-=(const Real& o) { return apply2(mpfr_sub, o); }
  Real& operator*=(const Real& o) { return apply2(mpfr_mul, o); }
  Real& operator/=(const Real& o) {
    if (o.is_zero()) throw NumericError(ErrorCode::Overflow, "division by zero");
    return apply2(mpfr_div, o);
  }
  Real& mul_2si(long e) {
    mpfr_mul_2si(v_, v_, e, MPFR_RNDN);
    return check();
  }

  Real& check() {
    if (!mpfr_number_p(v_)) throw NumericError(ErrorCode::Overflow, "non-finite result");
    return *this;
  }

 private:
  void init(int b) {
    if (b < MPFR_PREC_MIN) b = MPFR_PREC_MIN;
    mpfr_init2(v_, b);
  }
  template <class F>
  Real& apply2(F f, const Real& o) {
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    f(v_, v_, o.v_, MPFR_RNDN);
    return check();
  }

  mpfr_t v_;
};

inline int max_bits(const Real& a, const Real& b) { return a.bits() > b.bits() ? a.bits() : b.bits(); }

inline Real operator+(Real a, const Real& b) {
  a += b;
  return a;
}
inline Real operator-(Real a, const Real& b) {
  a -= b;
  return a;
}
inline Real operator*(Real a, const Real& b) {
  a *= b;
  return a;
}
inline Real operator/(Real a, const Real& b) {
  a /= b;
  return a;
}
inline Real operator+(Real a, double b) {
  a += Real(b, a.bits());
  return a;
}
inline Real operator-(Real a, double b) {
  a -= Real(b, a.bits());
  return a;
}
inline Real operator*(Real a, double b) {
  a *= Real(b, a.bits());
  return a;
}
inline Real operator/(Real a, double b) {
  a /= Real(b, a.bits());
  return a;
}
inline Real operator+(double a, const Real& b) {
  Real r(a, b.bits());
  r += b;
  return r;
}
inline Real operator-(double a, const Real& b) {
  Real r(a, b.bits());
  r -= b;
  return r;
}
inline Real operator*(double a, const Real& b) {
  Real r(a, b.bits());
  r *= b;
  return r;
}
inline Real operator/(double a, const Real& b) {
  Real r(a, b.bits());
  r /= b;
  return r;
}

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
inline bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
inline bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) <= 0; }
inline bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) >= 0; }

namespace detail {
template <class F>
inline Real unary(F f, const Real& x) {
  Real r(x.bits(), nullptr);
  f(r.raw(), x.raw(), MPFR_RNDN);
  r.check();
  return r;
}
}  // namespace detail

inline Real abs(const Real& x) { return detail::unary(mpfr_abs, x); }
inline Real sqrt(const Real& x) {
  if (x.sign() < 0) throw NumericError(ErrorCode::InvalidArgument, "sqrt of negative real");
  return detail::unary(mpfr_sqrt, x);
}
inline Real exp(const Real& x) { return detail::unary(mpfr_exp, x); }
inline Real expm1(const Real& x) { return detail::unary(mpfr_expm1, x); }
inline Real log(const Real& x) {
  if (x.sign() <= 0) throw NumericError(ErrorCode::InvalidArgument, "log of non-positive real");
  return detail::unary(mpfr_log, x);
}
inline Real log1p(const Real& x) { return detail::unary(mpfr_log1p, x); }
inline Real sin(const Real& x) { return detail::unary(mpfr_sin, x); }
inline Real cos(const Real& x) { return detail::unary(mpfr_cos, x); }
inline Real tan(const Real& x) { return detail::unary(mpfr_tan, x); }
inline Real atan(const Real& x) { return detail::unary(mpfr_atan, x); }
inline Real sinh(const Real& x) { return detail::unary(mpfr_sinh, x); }
inline Real cosh(const Real& x) { return detail::unary(mpfr_cosh, x); }
inline Real floor(const Real& x) {
  Real r(x.bits(), nullptr);
  mpfr_floor(r.raw(), x.raw());
  return r;
}
inline Real round(const Real& x) {
  Real r(x.bits(), nullptr);
  mpfr_round(r.raw(), x.raw());
  return r;
}
inline void sin_cos(const Real& x, Real& s, Real& c) {
  s = Real(x.bits(), nullptr);
  c = Real(x.bits(), nullptr);
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(max_bits(x, y), nullptr);
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r(max_bits(x, y), nullptr);
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  r.check();
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r(max_bits(x, y), nullptr);
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  r.check();
  return r;
}
inline Real pow(const Real& x, long n) {
  Real r(x.bits(), nullptr);
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  r.check();
  return r;
}
inline Real ldexp(const Real& x, long e) {
  Real r = x;
  r.mul_2si(e);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }

Real pi(int bits);
Real euler_e(int bits);
Real ln2(int bits);
Real euler_gamma(int bits);

// Unit roundoff 2^{1-bits}.
inline Real epsilon(int bits) { return ldexp(Real(1L, bits), 1 - bits); }

}  // namespace barrierlab::hp
