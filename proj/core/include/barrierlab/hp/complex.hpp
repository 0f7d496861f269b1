#pragma once

#include <string>

#include "barrierlab/hp/real.hpp"

namespace barrierlab::hp {

// Arbitrary-precision complex value. The working precision is the larger
// of the two component precisions.
class Complex {
 public:
  Complex() : re_(0L, default_precision()), im_(0L, default_precision()) {}
  Complex(Real re) : re_(std::move(re)), im_(0L, re_.bits()) {}  // NOLINT
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) { unify(); }
  Complex(double re, double im, int bits) : re_(re, bits), im_(im, bits) {}
  Complex(double re) : re_(re, default_precision()), im_(0L, default_precision()) {}  // NOLINT

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  int bits() const { return re_.bits(); }
  Complex with_bits(int b) const { return Complex(re_.with_bits(b), im_.with_bits(b)); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  Complex operator-() const { return Complex(-re_, -im_); }
  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o) {
    re_ *= o;
    im_ *= o;
    return *this;
  }
  Complex& operator/=(const Real& o) {
    re_ /= o;
    im_ /= o;
    return *this;
  }
  Complex& operator+=(const Real& o) {
    re_ += o;
    return *this;
  }
  Complex& operator-=(const Real& o) {
    re_ -= o;
    return *this;
  }

  std::string str(int digits = 0) const;

 private:
  void unify() {
    if (re_.bits() < im_.bits()) re_.set_bits(im_.bits());
    if (im_.bits() < re_.bits()) im_.set_bits(re_.bits());
  }
  Real re_, im_;
};

inline Complex operator+(Complex a, const Complex& b) {
  a += b;
  return a;
}
inline Complex operator-(Complex a, const Complex& b) {
  a -= b;
  return a;
}
inline Complex operator*(Complex a, const Complex& b) {
  a *= b;
  return a;
}
inline Complex operator/(Complex a, const Complex& b) {
  a /= b;
  return a;
}
inline Complex operator+(Complex a, const Real& b) {
  a += b;
  return a;
}
inline Complex operator-(Complex a, const Real& b) {
  a -= b;
  return a;
}
inline Complex operator*(Complex a, const Real& b) {
  a *= b;
  return a;
}
inline Complex operator/(Complex a, const Real& b) {
  a /= b;
  return a;
}
inline Complex operator+(const Real& a, Complex b) {
  b += a;
  return b;
}
inline Complex operator-(const Real& a, const Complex& b) { return Complex(a - b.re(), -b.im()); }
inline Complex operator*(const Real& a, Complex b) {
  b *= a;
  return b;
}
inline Complex operator/(const Real& a, const Complex& b) { return Complex(a, Real(0L, a.bits())) / b; }
inline Complex operator*(Complex a, double b) {
  a *= Real(b, a.bits());
  return a;
}
inline Complex operator*(double b, Complex a) {
  a *= Real(b, a.bits());
  return a;
}
inline Complex operator/(Complex a, double b) {
  a /= Real(b, a.bits());
  return a;
}
inline Complex operator+(Complex a, double b) {
  a += Real(b, a.bits());
  return a;
}
inline Complex operator-(Complex a, double b) {
  a -= Real(b, a.bits());
  return a;
}
inline Complex operator-(double a, const Complex& b) { return Real(a, b.bits()) - b; }
inline Complex operator+(double a, Complex b) {
  b += Real(a, b.bits());
  return b;
}

inline Complex conj(const Complex& z) { return Complex(z.re(), -z.im()); }
inline Real abs2(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }
inline Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
inline Real arg(const Complex& z) { return atan2(z.im(), z.re()); }
inline Complex mul_i(const Complex& z) { return Complex(-z.im(), z.re()); }

Complex exp(const Complex& z);
// e^{i theta}
Complex expi(const Real& theta);
Complex log(const Complex& z);
Complex log(const Complex& z, long branch);
Complex sqrt(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex pow(const Complex& z, long n);
Complex pow(const Complex& z, const Complex& w);
Complex polar(const Real& r, const Real& theta);

// Relative distance |a - b| / max(|b|, tiny).
Real rel_diff(const Complex& a, const Complex& b);

}  // namespace barrierlab::hp
