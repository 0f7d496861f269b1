#include "barrierlab/hp/complex.hpp"

namespace barrierlab::hp {

Complex& Complex::operator*=(const Complex& o) {
  Real a = re_ * o.re_;
  Real b = im_ * o.im_;
  Real c = re_ * o.im_;
  im_ *= o.re_;
  im_ += c;
  re_ = std::move(a);
  re_ -= b;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.is_zero()) throw NumericError(ErrorCode::Overflow, "complex division by zero");
  // Scale by the larger component so |o|^2 cannot overflow.
  if (abs(o.re_) >= abs(o.im_)) {
    Real r = o.im_ / o.re_;
    Real d = o.re_ + o.im_ * r;
    Real nr = (re_ + im_ * r) / d;
    Real ni = (im_ - re_ * r) / d;
    re_ = std::move(nr);
    im_ = std::move(ni);
  } else {
    Real r = o.re_ / o.im_;
    Real d = o.re_ * r + o.im_;
    Real nr = (re_ * r + im_) / d;
    Real ni = (im_ * r - re_) / d;
    re_ = std::move(nr);
    im_ = std::move(ni);
  }
  return *this;
}

std::string Complex::str(int digits) const {
  std::string s = re_.str(digits);
  std::string t = im_.str(digits);
  if (t[0] != '-') t = "+" + t;
  return s + t + "i";
}

Complex expi(const Real& theta) {
  Real s, c;
  sin_cos(theta, s, c);
  return Complex(std::move(c), std::move(s));
}

Complex exp(const Complex& z) {
  Real m = exp(z.re());
  Complex r = expi(z.im());
  r *= m;
  return r;
}

Complex polar(const Real& r, const Real& theta) {
  Complex u = expi(theta);
  u *= r;
  return u;
}

Complex log(const Complex& z) {
  if (z.is_zero()) throw NumericError(ErrorCode::Overflow, "log of zero");
  return Complex(log(abs(z)), arg(z));
}

Complex log(const Complex& z, long branch) {
  Complex r = log(z);
  if (branch != 0) r.im() += pi(z.bits()) * Real(2L * branch, z.bits());
  return r;
}

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return z;
  Real m = abs(z);
  Real a = sqrt((m + abs(z.re())) / 2.0);
  if (z.re().sign() >= 0) {
    return Complex(a, z.im() / (a * 2.0));
  }
  Real b = abs(z.im()) / (a * 2.0);
  return Complex(b, z.im().sign() < 0 ? -a : a);
}

Complex sin(const Complex& z) {
  Real s, c;
  sin_cos(z.re(), s, c);
  return Complex(s * cosh(z.im()), c * sinh(z.im()));
}

Complex cos(const Complex& z) {
  Real s, c;
  sin_cos(z.re(), s, c);
  return Complex(c * cosh(z.im()), -(s * sinh(z.im())));
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Real(1L, z.bits()) / pow(z, -n);
  Complex result(Real(1L, z.bits()), Real(0L, z.bits()));
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Complex pow(const Complex& z, const Complex& w) { return exp(w * log(z)); }

Real rel_diff(const Complex& a, const Complex& b) {
  Real d = abs(a - b);
  Real s = abs(b);
  if (s.is_zero()) return d;
  return d / s;
}

}  // namespace barrierlab::hp
