#include "barrierlab/hp/critical_time.hpp"

#include <cmath>

namespace barrierlab::hp {

namespace {

// Bisection for g(w) = target on [lo, hi] where g is monotone.
template <class G>
Real bisect(G g, const Real& target, Real lo, Real hi, bool increasing) {
  const int bits = target.bits();
  for (int it = 0; it < bits + 8; ++it) {
    Real mid = (lo + hi) / 2.0;
    bool above = g(mid) > target;
    if (above == increasing) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return (lo + hi) / 2.0;
}

bool converged(const Complex& step, const Complex& w, int bits) {
  if (step.is_zero()) return true;
  long es = std::max(step.re().exponent(), step.im().exponent());
  long ew = std::max(std::max(w.re().exponent(), w.im().exponent()), 0L);
  return es - ew < -bits - 2;
}

}  // namespace

Complex critical_time_log(const Complex& z, long branch, Side side, const InversionOptions& opt) {
  const int bits = z.bits();
  Real inv_e = Real(1L, bits) / euler_e(bits);
  if (z.is_real() && side == Side::None) {
    const Real& x = z.re();
    bool on_cut = branch == 0 ? x < -inv_e : x <= 0.0;
    if (on_cut) throw NumericError(ErrorCode::OnBranchCut, "z = " + z.str(20) + " needs a side");
  }

  // Real section near the critical point: bisection on w e^w.
  if (z.is_real() && (branch == 0 || (branch == -1 && side != Side::Lower))) {
    const Real& x = z.re();
    Real w0 = lambert_w(z, branch, side).re();
    Real dist = abs(w0 + 1.0);
    bool real_section = branch == 0 ? x >= -inv_e : (x >= -inv_e && x < 0.0);
    if (real_section && dist < opt.critical_guard) {
      auto g = [](const Real& w) { return w * exp(w); };
      Real minus_one(-1L, bits);
      if (branch == 0) {
        Real hi = Real(1L, bits) + log1p(abs(x));
        return Complex(bisect(g, x, minus_one, hi, true));
      }
      Real lo = -(Real(2L, bits) + log(-Real(1L, bits) / x) * 2.0);
      return Complex(bisect(g, x, lo, minus_one, false));
    }
  }

  // lambert_w runs Newton in w = ln x, which is x <- x - (x ln x - z)/(1 + ln x).
  return lambert_w(z, branch, side);
}

Complex invert_critical_time(const Complex& z, long branch, Side side, const InversionOptions& opt) {
  return exp(critical_time_log(z, branch, side, opt));
}

Complex zm_of_log(const Complex& w, int m) {
  Complex ew = exp(w);
  return ew * (w - 1.0) - w * (m + 0.5);
}

Complex zm(const Complex& x, int m) { return zm_of_log(log(x), m); }

Complex zm_prime_of_log(const Complex& w, int m) { return w * exp(w) - Real(m + 0.5, w.bits()); }

Real zm_critical_point(int m, int bits) {
  if (m < 0) throw NumericError(ErrorCode::InvalidArgument, "m must be non-negative");
  Complex w = lambert_w(Complex(Real(m + 0.5, bits)), 0);
  return exp(w.re());
}

Real zm_critical_value(int m, int bits) {
  Real xs = zm_critical_point(m, bits);
  return zm(Complex(xs), m).re();
}

Complex zm_log(const Complex& z, int m, long branch, Side side, const InversionOptions& opt) {
  if (m < 0) throw NumericError(ErrorCode::InvalidArgument, "m must be non-negative");
  const int bits = z.bits();
  const Real half_m(m + 0.5, bits);
  Real ws = lambert_w(Complex(half_m), 0).re();
  Real zs = zm_of_log(Complex(ws), m).re();
  Complex dz = z - zs;

  if (branch == 0 && z.is_real() && side == Side::None && z.re() < zs) {
    throw NumericError(ErrorCode::OnBranchCut, "z = " + z.str(20) + " needs a side");
  }
  if (branch == 0 && z.is_real() && z.re() >= zs) {
    Real rel = abs(dz.re()) / (abs(zs) + 1.0);
    if (rel < opt.critical_guard * opt.critical_guard) {
      auto g = [m](const Real& w) { return zm_of_log(Complex(w), m).re(); };
      Real hi = max(ws + 1.0, log(abs(z.re()) + 2.0) + 1.0);
      return Complex(bisect(g, z.re(), ws, hi, true));
    }
  }

  // Double precision seed.
  using cd = std::complex<double>;
  double zi = z.im().to_double();
  if (z.im().is_zero()) zi = side == Side::Lower ? -0.0 : 0.0;
  cd zd(z.re().to_double(), zi);
  const double wsd = ws.to_double();
  const double zsd = zs.to_double();
  const double mh = m + 0.5;
  auto f = [&](cd w) { return std::exp(w) * (w - 1.0) - mh * w - zd; };
  auto fp = [&](cd w) { return w * std::exp(w) - mh; };
  cd w;
  if (branch == 0 && std::abs(zd - zsd) < 0.5 * (1.0 + std::fabs(zsd))) {
    double z2 = (1.0 + wsd) * std::exp(wsd);
    w = wsd + std::sqrt(2.0 * (zd - zsd) / z2);
  } else {
    w = lambert_w_double(zd, branch);
  }
  for (int it = 0; it < 100; ++it) {
    cd d = fp(w);
    if (std::abs(d) < 1e-300) break;
    cd step = f(w) / d;
    if (std::abs(step) > 1.0) step *= 1.0 / std::abs(step);
    w -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
  }

  const int wp = bits + 16;
  Complex ww(Real(w.real(), wp), Real(w.imag(), wp));
  Complex zz = z.with_bits(wp);
  for (int it = 0; it < opt.max_iterations; ++it) {
    Complex d = zm_prime_of_log(ww, m);
    if (d.is_zero()) break;
    Complex step = (zm_of_log(ww, m) - zz) / d;
    ww -= step;
    if (converged(step, ww, bits)) return ww.with_bits(bits);
  }
  if (abs(dz) < 1e-6) throw NumericError(ErrorCode::NearCriticalPoint, "z_m inversion at " + z.str(20));
  throw NumericError(ErrorCode::NoConvergence, "z_m inversion at " + z.str(20));
}

Complex invert_zm(const Complex& z, int m, long branch, Side side, const InversionOptions& opt) {
  return exp(zm_log(z, m, branch, side, opt));
}

}  // namespace barrierlab::hp
