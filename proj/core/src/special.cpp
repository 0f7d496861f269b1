#include "barrierlab/hp/special.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <deque>
#include <mutex>
#include <vector>

namespace barrierlab::hp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInvE = 0.36787944117144232159552377016146;

int table_size(int bits) { return bits / 2 + 24; }
double stirling_radius(int bits) { return 0.125 * bits + 4.0; }

std::mutex g_table_mutex;
std::map<int, std::unique_ptr<const std::vector<Real>>> g_tables;

const std::vector<Real>& coefficient_table(int bits) {
  std::lock_guard<std::mutex> lock(g_table_mutex);
  auto it = g_tables.find(bits);
  if (it != g_tables.end()) return *it->second;
  auto table = std::make_unique<std::vector<Real>>();
  const int n = table_size(bits);
  table->reserve(n);
  const int wp = bits + 32;
  Real two_pi = pi(wp) * 2.0;
  Real two_pi_sq = two_pi * two_pi;
  Real power = two_pi_sq;
  Real fact(2L, wp);  // (2k)!
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      fact *= Real(static_cast<long>((2 * k - 1) * (2 * k)), wp);
      power *= two_pi_sq;
    }
    Real zeta(wp, nullptr);
    mpfr_zeta_ui(zeta.raw(), 2 * k, MPFR_RNDN);
    // B_{2k} = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}
    Real b = fact * zeta * 2.0 / power;
    if (k % 2 == 0) b = -b;
    b /= Real(static_cast<long>(2 * k) * (2 * k - 1), wp);
    b.set_bits(bits);
    table->push_back(std::move(b));
  }
  const auto& ref = *table;
  g_tables.emplace(bits, std::move(table));
  return ref;
}

// ln Gamma(z) for Re z > 0, |z| >= stirling_radius.
Complex stirling(const Complex& z) {
  const int bits = z.bits();
  const auto& c = coefficient_table(bits);
  Complex zinv = Real(1L, bits) / z;
  Complex zinv2 = zinv * zinv;
  Complex t = zinv;
  Complex sum(Real(0L, bits), Real(0L, bits));
  const long stop = -bits - 4;
  for (const Real& ck : c) {
    Complex term = t * ck;
    sum += term;
    long e = std::max(term.re().exponent(), term.im().exponent());
    if (e < stop) break;
    t *= zinv2;
  }
  Complex head = (z - 0.5) * log(z) - z;
  head += log(pi(bits) * 2.0) * 0.5;
  return head + sum;
}

struct Shift {
  long n = 0;
  Complex product;
  double arg_sum = 0.0;
};

Shift shift_for_stirling(const Complex& z) {
  Shift s;
  const int bits = z.bits();
  const double R = stirling_radius(bits);
  const double re = z.re().to_double();
  const double im = z.im().to_double();
  if (re >= 0.0 && std::hypot(re, im) >= R) {
    s.n = 0;
  } else if (std::fabs(im) >= R) {
    s.n = static_cast<long>(std::ceil(std::max(0.0, -re))) + 1;
  } else {
    s.n = static_cast<long>(std::ceil(R - re));
  }
  s.product = Complex(Real(1L, bits), Real(0L, bits));
  for (long j = 0; j < s.n; ++j) {
    s.product *= z + Real(j, bits);
    s.arg_sum += std::arg(std::complex<double>(re + static_cast<double>(j), im));
  }
  return s;
}

bool is_nonpositive_integer(const Complex& z, long* n_out) {
  if (!z.im().is_zero() && abs(z.im()) > ldexp(Real(1L, 64), 8 - z.bits())) return false;
  Real n = round(z.re());
  if (n > 0.0) return false;
  Real tol = ldexp(max(Real(1L, z.bits()), abs(n)), 8 - z.bits());
  if (abs(z.re() - n) > tol) return false;
  if (n_out) *n_out = n.to_long();
  return true;
}

// sin(pi z) with the argument reduced by the nearest integer first.
Complex sin_pi(const Complex& z) {
  Real n = round(z.re());
  Complex r = z - n;
  Complex s = sin(r * pi(z.bits()));
  if (n.to_long() & 1) s = -s;
  return s;
}

struct IntTable {
  std::deque<Real> rgamma;  // index k-1
  std::deque<Real> lngamma;
  Real rg_work, lg_work;
};

std::mutex g_int_mutex;
std::map<int, IntTable> g_int_tables;

IntTable& int_table(int bits, long k) {
  IntTable& t = g_int_tables[bits];
  const int wp = bits + 32;
  if (t.rgamma.empty()) {
    t.rg_work = Real(1L, wp);
    t.lg_work = Real(0L, wp);
    t.rgamma.push_back(Real(1L, bits));
    t.lngamma.push_back(Real(0L, bits));
  }
  while (static_cast<long>(t.rgamma.size()) < k) {
    long n = static_cast<long>(t.rgamma.size());  // next is Gamma(n+1) = n Gamma(n)
    Real nn(n, wp);
    t.rg_work /= nn;
    t.lg_work += log(nn);
    t.rgamma.push_back(t.rg_work.with_bits(bits));
    t.lngamma.push_back(t.lg_work.with_bits(bits));
  }
  return t;
}

}  // namespace

const Real& rgamma_int(long k, int bits) {
  if (k < 1) throw NumericError(ErrorCode::InvalidArgument, "rgamma_int needs k >= 1");
  std::lock_guard<std::mutex> lock(g_int_mutex);
  return int_table(bits, k).rgamma[k - 1];
}

const Real& lngamma_int(long k, int bits) {
  if (k < 1) throw NumericError(ErrorCode::InvalidArgument, "lngamma_int needs k >= 1");
  std::lock_guard<std::mutex> lock(g_int_mutex);
  return int_table(bits, k).lngamma[k - 1];
}

const Real& stirling_coefficient(int k, int bits) {
  const auto& t = coefficient_table(bits);
  if (k < 1 || k > static_cast<int>(t.size())) {
    throw NumericError(ErrorCode::InvalidArgument, "stirling coefficient index out of range");
  }
  return t[k - 1];
}

Real gamma(const Real& x) {
  if (x <= 0.0 && x.is_integer()) throw NumericError(ErrorCode::PoleAtNonPositiveInteger, "gamma pole");
  Real r(x.bits(), nullptr);
  mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
  r.check();
  return r;
}

Real lngamma(const Real& x) {
  if (x <= 0.0 && x.is_integer()) throw NumericError(ErrorCode::PoleAtNonPositiveInteger, "lngamma pole");
  Real r(x.bits(), nullptr);
  int sgn = 0;
  mpfr_lgamma(r.raw(), &sgn, x.raw(), MPFR_RNDN);
  r.check();
  return r;
}

Real rgamma(const Real& x) {
  if (x <= 0.0 && x.is_integer()) return Real(0L, x.bits());
  Real g(x.bits() + 8, nullptr);
  mpfr_gamma(g.raw(), x.raw(), MPFR_RNDN);
  if (mpfr_inf_p(g.raw())) return Real(0L, x.bits());
  Real r = Real(1L, x.bits() + 8) / g;
  r.set_bits(x.bits());
  return r;
}

Complex lngamma(const Complex& z) {
  if (is_nonpositive_integer(z, nullptr)) {
    throw NumericError(ErrorCode::PoleAtNonPositiveInteger, "lngamma pole at " + z.str(20));
  }
  const int bits = z.bits();
  const int wp = bits + 16;
  Complex zz = z.with_bits(wp);
  Shift s = shift_for_stirling(zz);
  Complex result = stirling(zz + Real(s.n, wp));
  if (s.n > 0) {
    Complex lp = log(s.product);
    double k = std::round((s.arg_sum - lp.im().to_double()) / kTwoPi);
    if (k != 0.0) lp.im() += pi(wp) * Real(2.0 * k, wp);
    result -= lp;
  }
  return result.with_bits(bits);
}

Complex gamma(const Complex& z) {
  if (z.is_real()) return Complex(gamma(z.re()), Real(0L, z.bits()));
  if (is_nonpositive_integer(z, nullptr)) {
    throw NumericError(ErrorCode::PoleAtNonPositiveInteger, "gamma pole at " + z.str(20));
  }
  const int bits = z.bits();
  const int wp = bits + 16;
  Complex zz = z.with_bits(wp);
  if (zz.re() < 0.5) {
    Complex one_minus = Real(1L, wp) - zz;
    Shift s = shift_for_stirling(one_minus);
    Complex g1 = exp(stirling(one_minus + Real(s.n, wp))) / s.product;
    Complex r = Complex(pi(wp)) / (sin_pi(zz) * g1);
    return r.with_bits(bits);
  }
  Shift s = shift_for_stirling(zz);
  Complex r = exp(stirling(zz + Real(s.n, wp))) / s.product;
  return r.with_bits(bits);
}

Complex rgamma(const Complex& z) {
  const int bits = z.bits();
  if (z.is_real()) return Complex(rgamma(z.re()), Real(0L, bits));
  if (is_nonpositive_integer(z, nullptr)) return Complex(Real(0L, bits), Real(0L, bits));
  const int wp = bits + 16;
  Complex zz = z.with_bits(wp);
  if (zz.re() < 0.5) {
    Complex one_minus = Real(1L, wp) - zz;
    Shift s = shift_for_stirling(one_minus);
    Complex g1 = exp(stirling(one_minus + Real(s.n, wp))) / s.product;
    Complex r = sin_pi(zz) * g1 / pi(wp);
    return r.with_bits(bits);
  }
  Shift s = shift_for_stirling(zz);
  Complex r = exp(-stirling(zz + Real(s.n, wp))) * s.product;
  return r.with_bits(bits);
}

std::complex<double> lambert_w_double(std::complex<double> z, long k) {
  using cd = std::complex<double>;
  const double e = 2.718281828459045235360287;
  const bool neg_im = std::signbit(z.imag());
  const bool near_bp = std::abs(z + kInvE) < 0.3;
  cd w;
  auto bp_series = [&](double sign) {
    cd p = sign * std::sqrt(2.0 * (e * z + 1.0));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  };
  if (k == 0 && near_bp) {
    w = bp_series(1.0);
  } else if (k == -1 && near_bp && !neg_im) {
    w = bp_series(-1.0);
  } else if (k == 1 && near_bp && neg_im) {
    w = bp_series(-1.0);
  } else if (k == 0 && std::abs(z) < 0.5) {
    w = z * (1.0 - z + 1.5 * z * z);
  } else if (k == 0 && std::abs(z) < 20.0 && std::abs(1.0 + z) > 0.3) {
    cd l = std::log(1.0 + z);
    w = l * (1.0 - std::log(1.0 + l) / (2.0 + l));
  } else {
    if (z == 0.0) return cd(-INFINITY, 0.0);
    cd l1 = std::log(z) + cd(0.0, kTwoPi * static_cast<double>(k));
    cd l2 = std::log(l1);
    w = l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1);
  }
  for (int it = 0; it < 60; ++it) {
    cd ew = std::exp(w);
    cd f = w * ew - z;
    cd wp1 = w + 1.0;
    if (std::abs(wp1) < 1e-12) break;
    cd step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

namespace {

// Series of W about the branch point in p = +-sqrt(2(e z + 1)).
Complex branch_point_series(const Complex& p) {
  const int bits = p.bits();
  std::vector<Real> u{Real(-1L, bits), Real(1L, bits)};
  std::vector<Real> a{Real(2L, bits), Real(-1L, bits)};
  Complex sum(Real(-1L, bits), Real(0L, bits));
  Complex pl = p;
  sum += pl;
  const long stop = -bits - 4;
  for (int l = 2; l < 4 * bits; ++l) {
    Real al(0L, bits);
    for (int j = 2; j < l; ++j) al += u[j] * u[l + 1 - j];
    a.push_back(al);
    Real ul = Real(static_cast<long>(l - 1), bits) * (u[l - 2] / 2.0 + a[l - 2] / 4.0) /
                  Real(static_cast<long>(l + 1), bits) -
              a[l] / 2.0 - u[l - 1] / Real(static_cast<long>(l + 1), bits);
    u.push_back(ul);
    pl *= p;
    Complex term = pl * ul;
    sum += term;
    if (!ul.is_zero() && std::max(term.re().exponent(), term.im().exponent()) < stop) break;
  }
  return sum;
}

}  // namespace

Complex lambert_w(const Complex& z, long k, Side side) {
  const int bits = z.bits();
  double zi = z.im().to_double();
  if (z.im().is_zero()) zi = side == Side::Lower ? -0.0 : 0.0;
  std::complex<double> zd(z.re().to_double(), zi);
  const bool neg_im = std::signbit(zd.imag());
  if (z.is_zero()) {
    if (k == 0) return z;
    throw NumericError(ErrorCode::OutOfDomain, "W_k(0) is singular for k != 0");
  }

  // Close to -1/e the Newton derivative 1 + w vanishes: use the branch point
  // series there.
  const bool bp_branch = k == 0 || (k == -1 && !neg_im) || (k == 1 && neg_im);
  if (bp_branch && std::abs(zd + kInvE) < 1e-2) {
    const int wp = 2 * bits + 32;
    Complex delta = z.with_bits(wp) * euler_e(wp) + Real(1L, wp);
    Complex arg2 = delta * 2.0;
    Complex p = sqrt(arg2);
    if (arg2.im().is_zero() && arg2.re().sign() < 0 && neg_im) p = conj(p);
    if (k != 0) p = -p;
    if (abs(p) < 1e-3) return branch_point_series(p.with_bits(bits + 16)).with_bits(bits);
  }

  std::complex<double> wd = lambert_w_double(zd, k);
  Complex w(Real(wd.real(), bits), Real(wd.imag(), bits));
  const int wp = bits + 16;
  w = w.with_bits(wp);
  Complex zz = z.with_bits(wp);
  const long stop = -bits - 2;
  for (int it = 0; it < 80; ++it) {
    Complex ew = exp(w);
    Complex f = w * ew - zz;
    Complex d = ew * (w + 1.0);
    if (d.is_zero()) break;
    Complex step = f / d;
    w -= step;
    long es = std::max(step.re().exponent(), step.im().exponent());
    long ew_ = std::max(w.re().exponent(), w.im().exponent());
    if (step.is_zero() || es - std::max(ew_, 0L) < stop) return w.with_bits(bits);
  }
  throw NumericError(ErrorCode::NoConvergence, "Lambert W iteration at " + z.str(20));
}

}  // namespace barrierlab::hp
