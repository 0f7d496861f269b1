#include "barrierlab/borel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "barrierlab/hp/contour.hpp"
#include "barrierlab/hp/critical_time.hpp"
#include "barrierlab/hp/special.hpp"
#include "barrierlab/solutions.hpp"

namespace barrierlab {

using namespace hp;

const char* to_string(BorelMethod m) {
  switch (m) {
    case BorelMethod::DirectHairpin: return "direct_hairpin";
    case BorelMethod::Decomposed: return "decomposed";
    case BorelMethod::BromwichLeft: return "bromwich_left";
    case BorelMethod::HairpinRight: return "hairpin_right";
  }
  return "unknown";
}

namespace {

constexpr double kTwoPi = 6.283185307179586;

int resolve_bits(const Complex& p, const BorelOptions& opt) { return opt.bits > 0 ? opt.bits : p.bits(); }

QuadOptions quad_options(const BorelOptions& opt) {
  QuadOptions q;
  q.rel_tol = opt.rel_tol;
  q.max_level = opt.max_level;
  q.max_evals = opt.max_evals;
  return q;
}

double log_abs(const Complex& v) {
  if (v.is_zero()) return -HUGE_VAL;
  Real a = abs(v);
  long e = a.exponent();
  return std::log(ldexp(a, -e).to_double()) + static_cast<double>(e) * std::log(2.0);
}

Complex divide_2pi_i(const Complex& v) {
  Real tp = pi(v.bits()) * 2.0;
  return Complex(v.im() / tp, -(v.re() / tp));
}

// Hairpin in w = ln x: along Im w = b_lo from A inwards to a_turn, up the
// vertical Re w = a_turn, and out along Im w = b_up. `cliff` is where the
// exponential factor starts to cut the legs off; nodes cluster there.
struct WHairpin {
  Real a_turn, b_lo, b_up, A;
  double cliff = 0.0;
};

std::vector<Real> leg_marks(const WHairpin& h) {
  const int bits = h.A.bits();
  const double a0 = h.a_turn.to_double(), A = h.A.to_double();
  std::vector<Real> marks{h.a_turn};
  double last = a0;
  auto push = [&](double v) {
    if (v > last + 0.25 && v < A - 0.25) {
      marks.emplace_back(v, bits);
      last = v;
    }
  };
  for (double v = std::ceil(a0); v <= 3.0; v += 1.0) push(v);
  for (double v = 4.5; v < h.cliff - 2.0; v *= 1.5) push(v);
  for (double v = std::max(h.cliff - 2.0, 4.0); v < A; v += 1.0) push(v);
  marks.push_back(h.A);
  return marks;
}

QuadResult w_hairpin(const WHairpin& h, const Integrand& g, const BorelOptions& opt, bool need_tail) {
  const int bits = h.A.bits();
  std::vector<Real> marks = leg_marks(h);
  ContourPath path;
  for (size_t i = marks.size() - 1; i > 0; --i) path.line(Complex(marks[i], h.b_lo), Complex(marks[i - 1], h.b_lo));
  std::vector<Real> bs{h.b_lo};
  const double lo = h.b_lo.to_double(), hi = h.b_up.to_double();
  for (double v : {-kTwoPi, -kTwoPi / 2, 0.0, kTwoPi / 2, kTwoPi}) {
    if (v > lo + 0.2 && v < hi - 0.2) bs.push_back(Real(v, bits));
  }
  bs.push_back(h.b_up);
  for (size_t i = 1; i < bs.size(); ++i) path.line(Complex(h.a_turn, bs[i - 1]), Complex(h.a_turn, bs[i]));
  for (size_t i = 1; i < marks.size(); ++i) path.line(Complex(marks[i - 1], h.b_up), Complex(marks[i], h.b_up));
  QuadResult r = contour_quad(path, g, quad_options(opt));
  if (need_tail) {
    // Beyond A the legs fall off at least as fast as between A - 1/2 and A.
    for (const Real& b : {h.b_lo, h.b_up}) {
      Complex wa(h.A, b), wb(h.A - 0.5, b);
      double la = log_abs(g(wa)), lb = log_abs(g(wb));
      double rate = 2.0 * (lb - la);
      if (!(rate > 0.0)) {
        throw NumericError(ErrorCode::RayDivergence, "integrand does not decay at Re w = " + h.A.str(6));
      }
      if (std::isfinite(la)) r.err_estimate += Real(std::exp(la) / rate, 64);
    }
  }
  return r;
}

// Smallest A >= a_min with kappa |r| (A - 1) e^A >= L.
double cutoff_abscissa(double kappa_r, double L, double a_min) {
  double A = a_min;
  while (kappa_r * (A - 1.0) * std::exp(A) < L && A < 1000.0) A += 0.05;
  return A;
}

double cliff_abscissa(double kappa_r) { return cutoff_abscissa(kappa_r, 1.0, 1.5); }

// Decay factor -cos(arg p + b) of e^{p w e^w} along Im w = b.
double ray_decay(const Complex& p, const Real& b) {
  return -std::cos(arg(p).to_double() + b.to_double());
}

void check_rays(const Complex& p, const Real& phi) {
  if (!(phi > 0.0) || !(phi < kTwoPi)) throw NumericError(ErrorCode::InvalidArgument, "phi must lie in (0, 2 pi)");
  if (p.is_zero() || ray_decay(p, phi) < 0.05) {
    throw NumericError(ErrorCode::RayDivergence, "e^{pz} does not decay along Im w = " + phi.str(6));
  }
}

Complex series_value(const DirichletSeriesSpec& spec, const Complex& p, const SeriesEvalOptions& so, Real& err) {
  SeriesValue v = eval_series_detail(spec, p, so);
  if (v.value.is_zero()) {
    err = Real(0L, p.bits());
    return Complex(Real(0L, p.bits()), Real(0L, p.bits()));
  }
  Complex c = v.value.to_complex();
  Real ulp = ldexp(Real(1L, p.bits()), -(p.bits() - 8));
  err = abs(c) * (v.tail_bound.with_bits(p.bits()) + ulp);
  return c;
}

}  // namespace

Real default_phi(const Complex& p) {
  const int bits = p.bits();
  Real phi = p.is_zero() ? pi(bits) : pi(bits) - arg(p);
  Real lo(0.5, bits), hi = pi(bits) * 2.0 - 0.5;
  return min(max(phi, lo), hi);
}

namespace {

// Hairpin with the upper leg on the principal sheet and the lower leg on
// its continuation around -1/e (sheet 1). This is the limit from Im p < 0
// of the continuation that default_phi selects.
BorelValue direct_lower(const Complex& p, const BorelOptions& opt) {
  const int bits = p.bits();
  const double pr = p.re().to_double();
  if (!(pr < -0.1)) throw NumericError(ErrorCode::OutOfDomain, "Y_direct needs Re p < -0.1");
  const double R = (std::log(1.0 / opt.rel_tol) + 10.0) / -pr;
  if (R > opt.max_radius) {
    throw NumericError(ErrorCode::TailBoundViolated, "hairpin radius " + std::to_string(R) + " above the limit");
  }
  const Real d(opt.delta, bits);
  const Real bp = -exp(Real(-1L, bits));
  std::vector<Real> xs{bp};
  // poles of y0(x(z)) sit at z = k ln k just below the upper leg
  for (long k = 2;; ++k) {
    double zk = static_cast<double>(k) * std::log(static_cast<double>(k));
    if (zk > R - 1.0) break;
    xs.push_back(Real(k, bits) * log(Real(k, bits)));
  }
  const Real Rr(R, bits);

  auto integrand = [&](long branch, Side side) {
    return [&p, branch, side](const Complex& z) {
      Complex x = invert_critical_time(z, branch, side);
      return exp(p * z) * y0(x);
    };
  };
  auto tail = [&](long branch, const Real& im, const Real& start) -> TailBound {
    return [&p, branch, im, start, pr](const Real& L) {
      Real end = start + L;
      Complex z(end, im);
      Complex x = invert_critical_time(z, branch, Side::None);
      Real sup = max(Real(1L, p.bits()), abs(y0(x)) * 2.0);
      return sup * exp(p.re() * end) / Real(-pr, p.bits());
    };
  };

  ContourPath upper;
  {
    const Real& last = xs.back();
    upper.ray_in(Complex(last, d), Complex(1.0, 0.0, bits), Rr - last, tail(0, d, last));
    for (size_t i = xs.size() - 1; i > 0; --i) upper.line(Complex(xs[i], d), Complex(xs[i - 1], d));
    upper.arc(Complex(bp), d, pi(bits) / 2.0, pi(bits));
  }
  ContourPath lower;
  {
    lower.arc(Complex(bp), d, pi(bits), pi(bits) * 1.5);
    for (size_t i = 1; i < xs.size(); ++i) lower.line(Complex(xs[i - 1], -d), Complex(xs[i], -d));
    const Real& last = xs.back();
    lower.ray(Complex(last, -d), Complex(1.0, 0.0, bits), Rr - last, tail(1, -d, last));
  }
  QuadOptions qo = quad_options(opt);
  QuadResult u = contour_quad(upper, integrand(0, Side::Upper), qo);
  QuadResult l = contour_quad(lower, integrand(1, Side::Lower), qo);
  BorelValue out;
  out.p = p;
  out.value = divide_2pi_i(u.value + l.value);
  out.err_estimate = (u.err_estimate + l.err_estimate) / (pi(bits) * 2.0);
  out.method = BorelMethod::DirectHairpin;
  return out;
}

}  // namespace

BorelValue Y_direct(const Complex& p0, const BorelOptions& opt) {
  Complex p = p0.with_bits(resolve_bits(p0, opt));
  if (p.im() < 0.0) return direct_lower(p, opt);
  // Mirror image: sheet -1 above, principal sheet below.
  BorelValue v = direct_lower(conj(p), opt);
  v.p = p;
  v.value = conj(v.value);
  return v;
}

BorelValue Y_decomposed(const Complex& p0, const Real& phi0, const BorelOptions& opt) {
  const int bits = resolve_bits(p0, opt);
  Complex p = p0.with_bits(bits);
  Real phi = phi0.with_bits(bits);
  check_rays(p, phi);
  Real f_err;
  Complex F = series_value(builtin_F(), p, opt.series, f_err);

  const double kappa = ray_decay(p, phi) * abs(p).to_double();
  const double L = bits * std::log(2.0) + 20.0;
  WHairpin h;
  h.a_turn = Real(-2L, bits);
  h.b_lo = phi - pi(bits) * 2.0;
  h.b_up = phi;
  h.A = Real(cutoff_abscissa(kappa, L, 3.0), bits);
  h.cliff = cliff_abscissa(kappa);
  auto g = [&p](const Complex& w) {
    Complex ew = exp(w);
    return exp(p * w * ew) * y0(ew) * (w + 1.0) * ew;
  };
  QuadResult J = w_hairpin(h, g, opt, true);
  BorelValue out;
  out.p = p;
  out.value = F + divide_2pi_i(J.value);
  out.err_estimate = f_err + J.err_estimate / (pi(bits) * 2.0);
  out.method = BorelMethod::Decomposed;
  return out;
}

BorelValue Y_decomposed(const Complex& p, const BorelOptions& opt) {
  return Y_decomposed(p, default_phi(p.with_bits(resolve_bits(p, opt))), opt);
}

DirichletSeriesSpec residue_F2(int m) {
  if (m < 0) throw NumericError(ErrorCode::InvalidArgument, "residue_F2 needs m >= 0");
  DirichletSeriesSpec s = builtin_F2(m);
  s.name = "F2res_m" + std::to_string(m);
  s.log_coeff = [m](const Real& k) {
    const int bits = k.bits();
    Real c = log(k) - Real(m + 0.5, bits) / k;
    if (c.is_zero()) return LogMagnitude::zero(bits);
    Real lg = k.is_integer() && k < 1e7 ? lngamma_int(k.to_long(), bits) : lngamma(k);
    Real ph = c < 0.0 ? pi(bits) : Real(0L, bits);
    return LogMagnitude(log(abs(c)) - 1.0 - lg, ph);
  };
  return s;
}

BorelValue H_left(const Complex& p0, int m, const Real& phi0, const BorelOptions& opt) {
  if (m < 2) throw NumericError(ErrorCode::InvalidArgument, "H_left needs m >= 2");
  const int bits = resolve_bits(p0, opt);
  Complex p = p0.with_bits(bits);
  Real phi = phi0.with_bits(bits);
  check_rays(p, phi);
  Real f_err;
  Complex F2 = series_value(residue_F2(m), p, opt.series, f_err);

  const double kappa = ray_decay(p, phi) * abs(p).to_double();
  const double L = bits * std::log(2.0) + 20.0;
  WHairpin h;
  h.a_turn = Real(-1L, bits);
  h.b_lo = phi - pi(bits) * 2.0;
  h.b_up = phi;
  const double A = cutoff_abscissa(kappa, L, 3.0);
  if (A >= 1000.0) throw NumericError(ErrorCode::TailBoundViolated, "H_left legs do not close at p = " + p.str(10));
  h.A = Real(A, bits);
  h.cliff = cliff_abscissa(kappa);
  auto g = [&p, m](const Complex& w) {
    return exp(p * zm_of_log(w, m)) * y0(exp(w)) * zm_prime_of_log(w, m);
  };
  QuadResult J = w_hairpin(h, g, opt, true);
  BorelValue out;
  out.p = p;
  out.value = F2 + divide_2pi_i(J.value);
  out.err_estimate = f_err + J.err_estimate / (pi(bits) * 2.0);
  out.method = BorelMethod::BromwichLeft;
  return out;
}

BorelValue H_left(const Complex& p, int m, const BorelOptions& opt) {
  return H_left(p, m, default_phi(p.with_bits(resolve_bits(p, opt))), opt);
}

namespace {

// Leading rate (per e^a) of ln|integrand| on Im w = b, Re w = a: the y0
// part follows e^{p z_m}, the 1/Gamma part loses x(Log x - 1) with the
// principal log.
double leg_growth(std::complex<double> p, double b, double a) {
  const double pi_d = kTwoPi / 2;
  std::complex<double> x = std::polar(1.0, b), w1(a - 1.0, b);
  double bp = std::remainder(b, kTwoPi);
  if (bp <= -pi_d) bp += kTwoPi;
  double e0 = (p * x * w1).real();
  double eg = e0 - (x * std::complex<double>(a - 1.0, bp)).real();
  return std::max(e0, eg);
}

// Moves b to the deepest point of the valley of leg_growth it is in.
double valley_floor(std::complex<double> p, double b, double a) {
  const int grid = 240;
  const double h = 1.2 / grid;
  double best = b, best_g = leg_growth(p, b, a);
  for (int dir : {-1, 1}) {
    for (int i = 1; i <= grid / 2; ++i) {
      double bb = b + dir * i * h;
      double gg = leg_growth(p, bb, a);
      if (!(gg < 0.0)) break;
      if (gg < best_g) {
        best_g = gg;
        best = bb;
      }
    }
  }
  return best;
}

// Follows the decay valley of a leg from Im p = 0, where it contains
// b = seed, out to p. The valley narrows like Re p - 1, so the steps in
// Im p shrink with it.
double track_leg(std::complex<double> p, double seed, double a) {
  const double ratio = std::fabs(p.imag()) / std::max(p.real() - 1.0, 1e-6);
  const int steps = static_cast<int>(std::clamp(std::ceil(10.0 * ratio), 40.0, 4000.0));
  double b = valley_floor({p.real(), 0.0}, seed, a);
  for (int s = 1; s <= steps; ++s) {
    std::complex<double> ps(p.real(), p.imag() * s / steps);
    if (!(leg_growth(ps, b, a) < 0.0)) {
      throw NumericError(ErrorCode::RayDivergence, "hairpin leg lost its decay valley");
    }
    b = valley_floor(ps, b, a);
  }
  return b;
}

BorelValue right_hairpin(const Complex& p0, int m, const BorelOptions& opt,
                         const std::function<Complex(const Complex&)>& y) {
  if (m < 2) throw NumericError(ErrorCode::InvalidArgument, "H_right needs m >= 2");
  const int bits = resolve_bits(p0, opt);
  Complex p = p0.with_bits(bits);
  if (!(p.re() > 1.0 + opt.series.barrier_guard)) {
    throw NumericError(ErrorCode::BarrierProximity, "H_right needs Re p > 1 at p = " + p.str(10));
  }
  const std::complex<double> pd(p.re().to_double(), p.im().to_double());
  const double aq = std::abs(pd - 1.0);
  const double pi_d = kTwoPi / 2;
  auto g = [&p, m, &y](const Complex& w) { return exp(p * zm_of_log(w, m)) * y(exp(w)) * zm_prime_of_log(w, m); };

  WHairpin h;
  h.a_turn = log(zm_critical_point(m, bits));
  const double a_turn = h.a_turn.to_double();
  const double L = bits * std::log(2.0) + 20.0;
  double A = std::max(cutoff_abscissa(0.7 * aq, L, a_turn + 2.0), 5.0);
  double scale = log_abs(g(Complex(h.a_turn, Real(0L, bits))));
  double blo = 0, bup = 0;
  for (;; A += 0.5) {
    if (A > opt.max_leg) {
      throw NumericError(ErrorCode::TailBoundViolated, "H_right legs do not close before Re w = " +
                                                           std::to_string(opt.max_leg) + " at p = " + p.str(10));
    }
    bup = track_leg(pd, pi_d, A) + opt.leg_shift;
    blo = track_leg(pd, -pi_d, A) + opt.leg_shift;
    if (!(leg_growth(pd, bup, A) < 0.0) || !(leg_growth(pd, blo, A) < 0.0)) {
      throw NumericError(ErrorCode::RayDivergence, "shifted hairpin legs leave their valleys");
    }
    if (!(bup - blo > 0.5)) throw NumericError(ErrorCode::BranchPointTooClose, "legs of the hairpin cross");
    h.A = Real(A, bits);
    double lu = log_abs(g(Complex(h.A, Real(bup, bits))));
    double ll = log_abs(g(Complex(h.A, Real(blo, bits))));
    if (std::max(lu, ll) < scale - L) break;
  }
  h.b_lo = Real(blo, bits);
  h.b_up = Real(bup, bits);
  h.cliff = cliff_abscissa(0.7 * aq);
  QuadResult r = w_hairpin(h, g, opt, true);
  BorelValue out;
  out.p = p;
  out.value = divide_2pi_i(r.value);
  out.err_estimate = r.err_estimate / (pi(bits) * 2.0);
  out.method = BorelMethod::HairpinRight;
  return out;
}

}  // namespace

BorelValue H_right(const Complex& p, const Complex& c, int m, const BorelOptions& opt) {
  const int bits = resolve_bits(p, opt);
  Complex cc = c.with_bits(bits);
  return right_hairpin(p, m, opt, [cc](const Complex& x) { return yc(x, cc); });
}

BorelValue G_right(const Complex& p, int m, const BorelOptions& opt) {
  return right_hairpin(p, m, opt, [](const Complex& x) { return rgamma(x); });
}

BarrierJump barrier_jump(const Real& t, const Real& eps, const Complex& c, int m, const BorelOptions& opt) {
  if (!(eps > 1e-3) || !(eps < 0.2)) throw NumericError(ErrorCode::InvalidArgument, "eps must lie in (1e-3, 0.2)");
  const int bits = opt.bits > 0 ? opt.bits : t.bits();
  Real tt = t.with_bits(bits), e = eps.with_bits(bits);
  BorelValue L = H_left(Complex(Real(1L, bits) - e, tt), m, opt);
  BorelValue R = H_right(Complex(Real(1L, bits) + e, tt), c, m, opt);
  BarrierJump j;
  j.t = tt;
  j.eps = e;
  j.left = L.value;
  j.right = R.value;
  j.jump = R.value - L.value;
  j.err_left = L.err_estimate;
  j.err_right = R.err_estimate;
  return j;
}

Calibration calibrate_c(int m, const BorelOptions& opt, double eps0, CalibrationRule rule) {
  const int bits = opt.bits > 0 ? opt.bits : default_precision();
  const Real one(1L, bits), e(eps0, bits);
  const Complex zero(Real(0L, bits));
  Calibration cal;
  cal.eps0 = e;
  cal.rule = rule;
  if (rule == CalibrationRule::MatchAtEps0) {
    cal.left = H_left(Complex(one - e), m, opt).value;
    cal.right0 = H_right(Complex(one + e), zero, m, opt).value;
    cal.g = G_right(Complex(one + e), m, opt).value;
  } else {
    Real e2 = e * 2.0;
    auto extrap = [](const Complex& a, const Complex& b) { return a * 2.0 - b; };
    cal.left = extrap(H_left(Complex(one - e), m, opt).value, H_left(Complex(one - e2), m, opt).value);
    cal.right0 = extrap(H_right(Complex(one + e), zero, m, opt).value, H_right(Complex(one + e2), zero, m, opt).value);
    cal.g = extrap(G_right(Complex(one + e), m, opt).value, G_right(Complex(one + e2), m, opt).value);
  }
  if (cal.g.is_zero()) throw NumericError(ErrorCode::IllConditioned, "c-coefficient vanishes");
  cal.c = (cal.left - cal.right0) / cal.g;
  return cal;
}

std::vector<Roundtrip> laplace_roundtrip(const std::vector<Complex>& xs, const Complex& c, int m,
                                         const RoundtripOptions& opt) {
  const int bits = opt.borel.bits > 0 ? opt.borel.bits : default_precision();
  std::map<std::string, Complex> left_cache, right_cache;
  long evals = 0;
  auto H = [&](const Real& p, bool right) {
    auto& cache = right ? right_cache : left_cache;
    std::string key = p.str(0);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ++evals;
    Complex v = right ? H_right(Complex(p), c, m, opt.borel).value : H_left(Complex(p), m, opt.borel).value;
    return cache.emplace(key, v).first->second;
  };
  QuadOptions qo;
  qo.rel_tol = opt.rel_tol;
  qo.max_level = opt.max_level;
  const Real zero(0L, bits), one(1L, bits), eta(opt.eta, bits), P(opt.P, bits);
  std::vector<Roundtrip> out;
  for (const Complex& x0 : xs) {
    Complex x = x0.with_bits(bits);
    Complex z = zm(x, m);
    auto lap = [&](bool right) {
      return [&, right](const Real& p) { return exp(-(z * p)) * H(p, right); };
    };
    QuadResult l = quad_interval(lap(false), zero, one - eta, qo);
    QuadResult r = quad_interval(lap(true), one + eta, P, qo);
    Roundtrip rt;
    rt.x = x;
    rt.z = z;
    rt.value = l.value + r.value;
    rt.reference = yc(x, c.with_bits(bits));
    rt.rel_err = rel_diff(rt.value, rt.reference);
    rt.h_evals = evals;
    out.push_back(std::move(rt));
  }
  return out;
}

}  // namespace barrierlab
