#include "barrierlab/acceleration.hpp"

#include <cmath>

#include "barrierlab/hp/contour.hpp"
#include "barrierlab/hp/special.hpp"
#include "barrierlab/solutions.hpp"

namespace barrierlab {

using namespace hp;

namespace {

Complex log_Y(const Complex& p) { return p + exp(p) - 1.0; }

}  // namespace

LogMagnitude Y_acc_log(const Complex& p) {
  Complex l = log_Y(p);
  return LogMagnitude(l.re(), wrap_angle(l.im()));
}

Complex Y_acc(const Complex& p) { return Y_acc_log(p).to_complex(); }

IntegralResidual acc_integral_residual(const Complex& p, double rel_tol) {
  const int bits = p.bits();
  QuadOptions qo;
  qo.rel_tol = rel_tol > 0.0 ? rel_tol : std::ldexp(1.0, -(bits - 8));
  qo.max_level = 14;
  qo.max_evals = 2000000;
  ContourPath path;
  path.line(Complex(Real(0L, bits)), p);
  QuadResult q = contour_quad(path, [](const Complex& s) { return Y_acc(s); }, qo);
  IntegralResidual r;
  r.lhs = exp(log_Y(p) - p);
  r.integral = q.value;
  r.residual = abs(r.lhs - r.integral - 1.0);
  return r;
}

PathValue f_path_detail(const Complex& x, const PathSpec& spec) {
  if (spec.n != 1 && spec.n != -1) throw NumericError(ErrorCode::InvalidArgument, "path index must be +1 or -1");
  const int bits = x.bits();
  // |integrand| on the ray is below exp((|x| + 1) s + pi |Im x| - e^s).
  const double ax = std::hypot(x.re().to_double(), x.im().to_double());
  const double L = (bits * 0.301 + 10.0) * std::log(10.0) + M_PI * std::fabs(x.im().to_double());
  double T = spec.truncation;
  if (T <= 0.0) {
    T = std::max(1.0, spec.shift + 1.0);
    while ((ax + 1.0) * T - std::exp(T) > -L) {
      T += 0.05;
      if (T > 60.0) throw NumericError(ErrorCode::TailBoundViolated, "f_path truncation beyond Re p = 60");
    }
  }
  const Real im = pi(bits) * static_cast<double>(spec.n);
  const Real sh(spec.shift, bits), Tr(T, bits);
  ContourPath path;
  Complex origin(Real(0L, bits));
  if (spec.shift != 0.0) path.line(origin, Complex(sh));
  path.line(Complex(sh), Complex(sh, im));
  // split the ray where the integrand peaks, e^s ~ |x| + 1
  const double peak = std::log(ax + 1.0);
  if (peak > spec.shift + 0.5 && peak < T - 0.5) {
    path.line(Complex(sh, im), Complex(Real(peak, bits), im));
    path.line(Complex(Real(peak, bits), im), Complex(Tr, im));
  } else {
    path.line(Complex(sh, im), Complex(Tr, im));
  }
  QuadOptions qo;
  qo.rel_tol = std::ldexp(1.0, -(bits - 8));
  qo.max_level = 14;
  qo.max_evals = 2000000;
  QuadResult q = contour_quad(path, [&x](const Complex& p) { return exp(log_Y(p) - x * p); }, qo);
  PathValue v;
  v.value = q.value;
  Real tail = exp(Real((ax + 1.0) * T + M_PI * std::fabs(x.im().to_double()) - std::exp(T), bits));
  v.err_estimate = q.err_estimate + tail;
  v.truncation = Tr;
  return v;
}

Complex f_path(const Complex& x, int n) {
  PathSpec s;
  s.n = n;
  return f_path_detail(x, s).value;
}

SaddleCheck saddle_check(const Real& t) {
  if (!(t >= 10.0)) throw NumericError(ErrorCode::InvalidArgument, "saddle_check needs t >= 10");
  const int bits = t.bits();
  Real lt = log(t);
  Complex expo(t * lt - t + lt / 2.0 - 1.0, pi(bits) * t);
  Complex asym = exp(expo) * sqrt(pi(bits) * 2.0);
  SaddleCheck s;
  s.ratio = f_plus(Complex(-t)) / asym;
  s.deviation = abs(s.ratio - 1.0);
  s.deviation_negated = abs(s.ratio + 1.0);
  return s;
}

TruncationReport least_term_truncation(const Complex& x, int max_order) {
  if (abs(x) < 3.0) throw NumericError(ErrorCode::InvalidArgument, "least_term_truncation needs |x| >= 3");
  const int bits = x.bits();
  FormalSeries fs = formal_series(max_order);
  Complex inv = Real(1L, bits) / x;
  std::vector<Complex> terms;
  terms.reserve(max_order);
  Complex pw = inv;
  int best = 1;
  Real best_mag;
  for (int n = 1; n <= max_order; ++n) {
    Complex t = pw * fs.coeff(n, bits);
    Real mag = abs(t);
    if (n == 1 || mag < best_mag) {
      best = n;
      best_mag = mag;
    }
    terms.push_back(std::move(t));
    pw *= inv;
  }
  if (best == max_order) {
    throw NumericError(ErrorCode::NoInteriorMinimum,
                       "terms still decrease at order " + std::to_string(max_order) + " for x = " + x.str(10));
  }
  TruncationReport r;
  r.x = x;
  r.N_star = best;
  r.partial_sum = Complex(Real(0L, bits));
  for (int n = 0; n < best; ++n) r.partial_sum += terms[n];
  r.reference = y1(x);
  r.error = abs(r.partial_sum - r.reference);
  r.normalized_error = r.error * abs(gamma(x));
  r.least_term = best_mag;
  return r;
}

}  // namespace barrierlab
