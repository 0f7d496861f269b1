#include "barrierlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "barrierlab/hp/contour.hpp"
#include "barrierlab/hp/special.hpp"
#include "barrierlab/parallel.hpp"

namespace barrierlab {

using namespace hp;

namespace {

bool is_small_integer(const Real& k) { return k.is_integer() && k < 1e7; }

Real lngamma_k(const Real& k) {
  if (is_small_integer(k)) return lngamma_int(k.to_long(), k.bits());
  return lngamma(k);
}

int round_bits(long b) { return static_cast<int>((b + 63) / 64 * 64); }

}  // namespace

DirichletSeriesSpec builtin_F() {
  DirichletSeriesSpec s;
  s.name = "F";
  s.log_coeff = [](const Real& k) {
    Real lk = log(k);
    return LogMagnitude(log1p(lk) - 1.0 - lngamma_k(k), Real(0L, k.bits()));
  };
  s.exponent = [](const Real& k) { return k * log(k); };
  return s;
}

DirichletSeriesSpec builtin_F2(int m) {
  if (m < 0) throw NumericError(ErrorCode::InvalidArgument, "F2 needs m >= 0");
  DirichletSeriesSpec s;
  s.name = "F2_m" + std::to_string(m);
  s.log_coeff = [m](const Real& k) {
    Real c = log(k) + Real(static_cast<long>(m), k.bits()) / k;
    if (c.is_zero()) return LogMagnitude::zero(k.bits());
    return LogMagnitude(log(c) - 1.0 - lngamma_k(k), Real(0L, k.bits()));
  };
  s.exponent = [m](const Real& k) {
    Real lk = log(k);
    return k * lk - k - lk * (m + 0.5);
  };
  return s;
}

DirichletSeriesSpec builtin_theta() {
  DirichletSeriesSpec s;
  s.name = "theta";
  // e^{(p-1) n^2}: the shift to the barrier sits in the coefficient.
  s.log_coeff = [](const Real& k) { return LogMagnitude(-(k * k), Real(0L, k.bits())); };
  s.exponent = [](const Real& k) { return k * k; };
  return s;
}

namespace {

struct Term {
  Real log_re;
  Real phase;
  bool zero = false;
};

Term make_term(const DirichletSeriesSpec& spec, const Real& k, const Complex& p) {
  LogMagnitude c = spec.log_coeff(k);
  if (c.is_zero()) return {Real(0L, k.bits()), Real(0L, k.bits()), true};
  Real ex = spec.exponent(k);
  Term t{c.log_abs() + p.re() * ex, c.arg(), false};
  if (!p.im().is_zero()) t.phase += p.im() * ex;
  return t;
}

long magnitude_bits(const Real& x) { return x.is_zero() ? 0 : std::max(0L, x.exponent()); }

SeriesValue direct_sum(const DirichletSeriesSpec& spec, const Complex& p, int bits, int wp,
                       const SeriesEvalOptions& opt) {
  Complex pp = p.with_bits(wp);
  std::vector<Term> terms;
  std::optional<Real> best;
  long best_k = spec.first;
  const double ln2 = std::log(2.0);
  const Real cutoff(-(bits + 20) * ln2, wp);
  Real tail_rel(0L, 64);
  for (long k = spec.first;; ++k) {
    if (k - spec.first >= opt.term_budget) {
      throw NumericError(ErrorCode::BudgetExhausted, spec.name + ": term budget exhausted");
    }
    Term t = make_term(spec, Real(k, wp), pp);
    terms.push_back(t);
    if (t.zero) continue;
    if (!best || t.log_re > *best) {
      best = t.log_re;
      best_k = k;
    }
    if (terms.size() < 2) continue;
    const Term& prev = terms[terms.size() - 2];
    if (prev.zero || !(t.log_re < prev.log_re)) continue;
    if (!(t.log_re - *best < cutoff)) continue;
    Real r = exp(t.log_re - prev.log_re);
    Real tail = exp(t.log_re - *best) * r / (1.0 - r);
    if (tail.exponent() < -bits - 4) {
      tail_rel = tail.with_bits(64);
      break;
    }
  }
  if (!best) {
    SeriesValue v{LogMagnitude::zero(bits), best_k, Real(0L, bits), Real(0L, bits), static_cast<long>(terms.size()), tail_rel, false};
    return v;
  }
  const Real& M = *best;
  Complex sum(Real(0L, wp), Real(0L, wp));
  auto add = [&](const Term& t) {
    if (t.zero) return;
    Real mag = exp(t.log_re - M);
    if (t.phase.is_zero()) {
      sum += Complex(mag);
    } else {
      sum += polar(mag, t.phase);
    }
  };
  if (opt.reverse) {
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) add(*it);
  } else {
    for (const auto& t : terms) add(t);
  }
  LogMagnitude s = LogMagnitude::from_complex(sum);
  LogMagnitude value = s.is_zero() ? s : LogMagnitude((s.log_abs() + M).with_bits(bits), s.arg().with_bits(bits));
  return {value, best_k, log(Real(best_k, bits)), M.with_bits(bits), static_cast<long>(terms.size()), tail_rel, false};
}

// Sum of a series whose terms vary slowly in k, as an integral over real k.
// The peak width s ~ sqrt(k*/(1-p)) is large, so the Euler-Maclaurin
// remainder is of order exp(-2 pi^2 s^2) and the boundary terms vanish.
SeriesValue continuous_sum(const DirichletSeriesSpec& spec, const Real& p, int bits, const SeriesEvalOptions& opt) {
  auto value_at = [&](const Real& u, int prec) {
    Real k = exp(u.with_bits(prec));
    return make_term(spec, k, Complex(p.with_bits(prec))).log_re;
  };
  auto locate = [&](int prec, Real& u_peak, Real& h_peak) {
    Real a = log(Real(opt.direct_limit, prec));
    Real step(1L, prec);
    Real ha = value_at(a, prec);
    Real b = a + step, hb = value_at(b, prec);
    while (hb > ha) {
      a = b;
      ha = hb;
      step *= 2.0;
      b = a + step;
      hb = value_at(b, prec);
      if (step > 1e6) throw NumericError(ErrorCode::NoConvergence, spec.name + ": no peak found");
    }
    Real lo = max(a - step / 2.0, log(Real(opt.direct_limit, prec)));
    Real hi = b;
    const Real g = (sqrt(Real(5L, prec)) - 1.0) / 2.0;
    Real c = hi - (hi - lo) * g, d = lo + (hi - lo) * g;
    Real hc = value_at(c, prec), hd = value_at(d, prec);
    Real hlo = value_at(lo, prec), hhi = value_at(hi, prec);
    for (int it = 0; it < 20 * prec; ++it) {
      if (hc > hd) {
        hi = d;
        hhi = hd;
        d = c;
        hd = hc;
        c = hi - (hi - lo) * g;
        hc = value_at(c, prec);
      } else {
        lo = c;
        hlo = hc;
        c = d;
        hc = hd;
        d = lo + (hi - lo) * g;
        hd = value_at(d, prec);
      }
      if (max(hc, hd) - min(hlo, hhi) < 0.05) break;
    }
    u_peak = hc > hd ? c : d;
    h_peak = max(hc, hd);
  };

  Real u0(0L, bits + 64), h0(0L, bits + 64);
  locate(bits + 64, u0, h0);
  // the parts p k ln k and ln Gamma(k) are larger than their difference
  const int wp = round_bits(bits + 32 + std::max(magnitude_bits(h0), magnitude_bits(exp(u0)) + magnitude_bits(u0)));
  Real u(0L, wp), M(0L, wp);
  locate(wp, u, M);
  Real kstar = exp(u);

  // width from the curvature at the peak
  Real delta = max(kstar * 1e-12, Real(1L, wp));
  Real q(0L, wp);
  for (int it = 0; it < 200; ++it) {
    Real hp1 = value_at(log(kstar + delta), wp), hm1 = value_at(log(kstar - delta), wp);
    q = M - (hp1 + hm1) / 2.0;
    if (q > 0.01) break;
    delta *= 4.0;
  }
  if (!(q > 0.0)) throw NumericError(ErrorCode::NoConvergence, spec.name + ": flat peak");
  Real s = delta / sqrt(q * 2.0);

  Real tmax(24L, wp);
  const Real drop(-(bits + 20) * std::log(2.0), wp);
  for (int it = 0; it < 8; ++it) {
    Real lo = kstar - s * tmax, hi = kstar + s * tmax;
    if (lo < Real(opt.direct_limit / 2, wp)) {
      throw NumericError(ErrorCode::OutOfDomain, spec.name + ": peak too close to the direct range");
    }
    if (value_at(log(lo), wp) - M < drop && value_at(log(hi), wp) - M < drop) break;
    tmax *= 2.0;
  }
  const double marks[] = {-1.0, -0.3333, -0.0833, -0.0167, 0.0, 0.0167, 0.0833, 0.3333, 1.0};
  QuadOptions qo;
  qo.rel_tol = std::max(std::ldexp(1.0, -bits - 4), 1e-300);
  qo.max_level = 12;
  Complex total(Real(0L, wp), Real(0L, wp));
  auto f = [&](const Real& k) {
    Term t = make_term(spec, k, Complex(p.with_bits(wp)));
    if (t.zero) return Complex(Real(0L, wp), Real(0L, wp));
    return polar(exp(t.log_re - M), t.phase);
  };
  for (int i = 0; i + 1 < 9; ++i) {
    Real a = kstar + s * tmax * marks[i], b = kstar + s * tmax * marks[i + 1];
    QuadResult r = quad_interval(f, a, b, qo);
    total += r.value;
  }
  LogMagnitude sm = LogMagnitude::from_complex(total);
  SeriesValue out{LogMagnitude((sm.log_abs() + M).with_bits(bits), sm.arg().with_bits(bits)), 0, Real(0L, bits), Real(0L, bits), 0,
                  Real(std::ldexp(1.0, -bits), 64), true};
  Real kf = floor(kstar);
  Real t0 = value_at(log(kf), wp), t1 = value_at(log(kf + 1.0), wp);
  Real kbest = t1 > t0 ? kf + 1.0 : kf;
  out.k_star = kbest < 9.2e18 ? kbest.to_long() : std::numeric_limits<long>::max();
  out.log_k_star = log(kbest).with_bits(bits);
  out.log_max_term = max(t0, t1).with_bits(bits);
  out.terms = -1;
  return out;
}

bool peak_beyond(const DirichletSeriesSpec& spec, const Real& p, long limit) {
  const int prec = p.bits() + 32;
  Real a(limit, prec), b(limit + std::max(1L, limit / 20), prec);
  Complex pc(p.with_bits(prec));
  Term ta = make_term(spec, a, pc), tb = make_term(spec, b, pc);
  return !ta.zero && !tb.zero && tb.log_re > ta.log_re;
}

}  // namespace

SeriesValue eval_series_detail(const DirichletSeriesSpec& spec, const Complex& p, const SeriesEvalOptions& opt) {
  const int bits = p.bits();
  if (p.re() > 1.0 - opt.barrier_guard) {
    throw NumericError(ErrorCode::BarrierProximity, spec.name + " at p = " + p.str(20));
  }
  if (p.is_real() && peak_beyond(spec, p.re(), opt.direct_limit)) {
    return continuous_sum(spec, p.re(), bits, opt);
  }
  int wp = round_bits(bits + 32);
  SeriesValue v = direct_sum(spec, p, bits, wp, opt);
  // Factoring out e^M needs |M| resolved to bits past its integer part;
  // the phases likewise.
  long need = bits + 32 + magnitude_bits(v.log_max_term);
  if (!p.im().is_zero()) {
    Real span = abs(p.im()) * spec.exponent(Real(v.terms + spec.first, bits));
    need += magnitude_bits(span);
  }
  if (need > wp + 8) v = direct_sum(spec, p, bits, round_bits(need), opt);
  return v;
}

LogMagnitude eval_series(const DirichletSeriesSpec& spec, const Complex& p, const SeriesEvalOptions& opt) {
  return eval_series_detail(spec, p, opt).value;
}

GrowthProfile growth_profile(const DirichletSeriesSpec& spec, const Real& p, const SeriesEvalOptions& opt) {
  if (!(p > 0.3) || !(p < 1.0 - 1e-3)) {
    throw NumericError(ErrorCode::OutOfDomain, "growth_profile needs 0.3 < p < 1 - 1e-3");
  }
  SeriesValue v = eval_series_detail(spec, Complex(p), opt);
  return {Complex(p), v.k_star, v.log_k_star, v.log_max_term, v.value.log_abs()};
}

std::vector<GrowthProfile> growth_profiles(const DirichletSeriesSpec& spec, const std::vector<Real>& ps,
                                           const SeriesEvalOptions& opt) {
  return parallel_map(ps, [&](const Real& p) { return growth_profile(spec, p, opt); });
}

Real growth_law(const Real& p) {
  Real q = Real(1L, p.bits()) - p;
  return Real(1L, p.bits()) / q + log(q);
}

std::vector<Spike> vertical_samples(const DirichletSeriesSpec& spec, const Real& re_p, const Real& lo,
                                    const Real& hi, int samples, const SeriesEvalOptions& opt) {
  if (samples < 2) throw NumericError(ErrorCode::InvalidArgument, "spike_scan needs at least 2 samples");
  if (!(re_p < 1.0 - 1e-3)) throw NumericError(ErrorCode::BarrierProximity, "spike_scan needs Re p < 1 - 1e-3");
  std::vector<Real> ts;
  for (int j = 0; j < samples; ++j) ts.push_back(lo + (hi - lo) * Real(j, lo.bits()) / Real(samples - 1, lo.bits()));
  return parallel_map(ts, [&](const Real& t) {
    LogMagnitude v = eval_series(spec, Complex(re_p, t), opt);
    return Spike{t, v.is_zero() ? Real(-1e300, t.bits()) : v.log_abs()};
  });
}

std::vector<Spike> spike_scan(const DirichletSeriesSpec& spec, const Real& re_p, const Real& lo, const Real& hi,
                              int samples, const SeriesEvalOptions& opt) {
  auto s = vertical_samples(spec, re_p, lo, hi, samples, opt);
  std::vector<Spike> peaks;
  const size_t n = s.size();
  for (size_t j = 0; j < n; ++j) {
    bool left = j == 0 || s[j].log_abs >= s[j - 1].log_abs;
    bool right = j + 1 == n || s[j].log_abs >= s[j + 1].log_abs;
    if (left && right) peaks.push_back(s[j]);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const Spike& a, const Spike& b) { return a.log_abs > b.log_abs; });
  return peaks;
}

namespace {

struct BoundaryPoint {
  Complex p;
  Real log_abs;
  Real arg;
};

BoundaryPoint sample(const DirichletSeriesSpec& spec, const Complex& p, const SeriesEvalOptions& opt) {
  LogMagnitude v = eval_series(spec, p, opt);
  if (v.is_zero()) throw NumericError(ErrorCode::ZeroOnBoundary, "series vanishes at " + p.str(20));
  return {p, v.log_abs(), v.arg()};
}

// Winding along the polygon through pts (closed), refining any step whose
// phase change exceeds pi/3.
Real winding(const DirichletSeriesSpec& spec, std::vector<BoundaryPoint> pts, const ZeroCountOptions& opt,
             long& evals) {
  const Real limit = pi(64) / 3.0;
  Real total(0L, pts.front().p.bits());
  pts.push_back(pts.front());
  std::vector<BoundaryPoint> stack;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    BoundaryPoint a = pts[i];
    stack.clear();
    stack.push_back(pts[i + 1]);
    int depth = 0;
    while (!stack.empty()) {
      BoundaryPoint b = stack.back();
      Real d = wrap_angle(b.arg - a.arg);
      if (abs(d) > limit && depth < 40) {
        if (++evals > opt.max_samples) throw NumericError(ErrorCode::BudgetExhausted, "zero count refinement");
        Complex mid = (a.p + b.p) / 2.0;
        stack.push_back(sample(spec, mid, opt.eval));
        ++depth;
        continue;
      }
      total += d;
      a = b;
      stack.pop_back();
      depth = 0;
    }
  }
  return total / (pi(total.bits()) * 2.0);
}

}  // namespace

long count_zeros(const DirichletSeriesSpec& spec, const Rectangle& rect, const ZeroCountOptions& opt) {
  if (!(rect.re_lo < rect.re_hi) || !(rect.im_lo < rect.im_hi)) {
    throw NumericError(ErrorCode::InvalidArgument, "empty rectangle");
  }
  if (!(rect.re_hi < 1.0 - 1e-3)) throw NumericError(ErrorCode::BarrierProximity, "rectangle too close to Re p = 1");
  const int bits = rect.re_lo.bits();
  // mean zero separation near the right edge, ln d ~ -(1-p) e^{1/(1-p)}
  double q = 1.0 - std::max(0.0, rect.re_hi.to_double());
  double sep = std::exp(-q * std::exp(1.0 / q));
  double w = (rect.re_hi - rect.re_lo).to_double(), h = (rect.im_hi - rect.im_lo).to_double();
  double step = std::min((w + h) / 32.0, sep / 10.0);

  std::optional<long> previous;
  long nw = std::max(2L, static_cast<long>(std::ceil(w / step)));
  long nh = std::max(2L, static_cast<long>(std::ceil(h / step)));
  std::vector<std::pair<Real, Real>> last;
  for (int round = 0; round < 6; ++round) {
    if (2 * (nw + nh) > opt.max_samples) throw NumericError(ErrorCode::BudgetExhausted, "zero count sampling");
    std::vector<Complex> ps;
    Complex c0(rect.re_lo, rect.im_lo), c1(rect.re_hi, rect.im_lo), c2(rect.re_hi, rect.im_hi),
        c3(rect.re_lo, rect.im_hi);
    auto edge = [&](const Complex& a, const Complex& b, long n) {
      for (long j = 0; j < n; ++j) ps.push_back(a + (b - a) * Real(j, bits) / Real(n, bits));
    };
    edge(c0, c1, nw);
    edge(c1, c2, nh);
    edge(c2, c3, nw);
    edge(c3, c0, nh);
    // every other point of a refined grid was sampled in the previous round
    std::vector<size_t> todo;
    for (size_t i = 0; i < ps.size(); ++i) {
      if (last.empty() || i % 2 == 1) todo.push_back(i);
    }
    auto fresh = parallel_map(todo, [&](size_t i) {
      LogMagnitude v = eval_series(spec, ps[i], opt.eval);
      return std::make_pair(v.is_zero() ? Real(-1e300, bits) : v.log_abs(), v.arg());
    });
    std::vector<std::pair<Real, Real>> pts(ps.size());
    for (size_t i = 0; i < todo.size(); ++i) pts[todo[i]] = fresh[i];
    if (!last.empty()) {
      for (size_t i = 0; i < ps.size(); i += 2) pts[i] = last[i / 2];
    }
    std::vector<Real> mags;
    std::vector<BoundaryPoint> bp;
    for (size_t i = 0; i < ps.size(); ++i) {
      mags.push_back(pts[i].first);
      bp.push_back({ps[i], pts[i].first, pts[i].second});
    }
    std::vector<Real> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    Real median = sorted[sorted.size() / 2];
    Real floor_log = median + std::log(opt.min_modulus);
    for (const auto& m : mags) {
      if (m < floor_log) throw NumericError(ErrorCode::ZeroOnBoundary, "series nearly vanishes on the boundary");
    }
    long evals = static_cast<long>(ps.size());
    Real wn = winding(spec, bp, opt, evals);
    double wd = wn.to_double();
    long n = std::lround(wd);
    if (std::fabs(wd - n) > 0.1) throw NumericError(ErrorCode::NonIntegerWinding, "winding " + wn.str(10));
    if (previous && *previous == n) return n;
    previous = n;
    last = std::move(pts);
    nw *= 2;
    nh *= 2;
  }
  throw NumericError(ErrorCode::NonIntegerWinding, "winding number did not stabilize");
}

std::pair<LogMagnitude, LogMagnitude> difference_quotients(const DirichletSeriesSpec& spec, const Real& p,
                                                           const Real& h, const SeriesEvalOptions& opt) {
  auto neg = [](const LogMagnitude& v) {
    return v.is_zero() ? v : LogMagnitude(v.log_abs(), v.arg() + pi(v.bits()));
  };
  LogMagnitude s0 = eval_series(spec, Complex(p), opt);
  LogMagnitude s1 = eval_series(spec, Complex(p + h), opt);
  LogMagnitude s2 = eval_series(spec, Complex(p + h * 2.0), opt);
  LogMagnitude lh = LogMagnitude::from_complex(Complex(h));
  LogMagnitude two = LogMagnitude::from_complex(Complex(Real(2L, p.bits())));
  LogMagnitude d1 = (s1 + neg(s0)) / lh;
  LogMagnitude d2 = (s2 + neg(two * s1) + s0) / (lh * lh);
  return {d1, d2};
}

}  // namespace barrierlab
