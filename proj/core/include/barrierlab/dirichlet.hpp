#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "barrierlab/hp/complex.hpp"
#include "barrierlab/hp/log_magnitude.hpp"

namespace barrierlab {

using hp::Complex;
using hp::LogMagnitude;
using hp::Real;

// sum_{k >= first} coeff(k) e^{p exponent(k)}
//
// Coefficients are carried in the log domain: 1/Gamma(k) underflows any
// exponent range long before the terms stop mattering near Re p = 1. Both
// functions must make sense for real non-integer k when the series is to be
// evaluated close to the barrier.
struct DirichletSeriesSpec {
  std::string name;
  std::function<LogMagnitude(const Real& k)> log_coeff;
  std::function<Real(const Real& k)> exponent;
  long first = 1;

  Complex coeff(const Real& k) const { return log_coeff(k).to_complex(); }
};

DirichletSeriesSpec builtin_F();
DirichletSeriesSpec builtin_F2(int m);
DirichletSeriesSpec builtin_theta();

// JSON document {name, coeff, exponent[, first][, m]} where coeff and
// exponent are either "builtin:F", "builtin:F2", "builtin:theta" or an
// expression in k (ln, exp, sqrt, gamma, rgamma, lngamma, e, pi, + - * / ^).
DirichletSeriesSpec series_from_json(const std::string& text);

struct SeriesEvalOptions {
  // Refuse Re p above 1 - barrier_guard.
  double barrier_guard = 1e-6;
  long term_budget = 4000000;
  // Real p whose dominant index lies beyond this is summed through the
  // continuous integral over k.
  long direct_limit = 100000;
  bool reverse = false;
};

struct SeriesValue {
  LogMagnitude value;
  // Saturates at LONG_MAX; log_k_star is exact.
  long k_star = 0;
  Real log_k_star;
  Real log_max_term;
  long terms = 0;
  // Bound on the dropped tail relative to |value|.
  Real tail_bound;
  bool continuous = false;
};

SeriesValue eval_series_detail(const DirichletSeriesSpec& spec, const Complex& p, const SeriesEvalOptions& opt = {});
LogMagnitude eval_series(const DirichletSeriesSpec& spec, const Complex& p, const SeriesEvalOptions& opt = {});

struct GrowthProfile {
  Complex p;
  long k_star = 0;
  Real log_k_star;
  Real log_max_term;
  Real log_abs_sum;
};

GrowthProfile growth_profile(const DirichletSeriesSpec& spec, const Real& p, const SeriesEvalOptions& opt = {});
std::vector<GrowthProfile> growth_profiles(const DirichletSeriesSpec& spec, const std::vector<Real>& ps,
                                           const SeriesEvalOptions& opt = {});

// 1/(1-p) + ln(1-p), the leading behaviour of ln ln F(p).
Real growth_law(const Real& p);

struct Spike {
  Real im_p;
  Real log_abs;
};

// Local maxima of ln|series| along re_p + i t, t in [lo, hi], largest first.
std::vector<Spike> spike_scan(const DirichletSeriesSpec& spec, const Real& re_p, const Real& lo, const Real& hi,
                              int samples, const SeriesEvalOptions& opt = {});
// The samples themselves, in order of t.
std::vector<Spike> vertical_samples(const DirichletSeriesSpec& spec, const Real& re_p, const Real& lo,
                                    const Real& hi, int samples, const SeriesEvalOptions& opt = {});

struct Rectangle {
  Real re_lo, re_hi, im_lo, im_hi;
};

struct ZeroCountOptions {
  SeriesEvalOptions eval;
  long max_samples = 20000;
  // |F| below this fraction of the boundary median counts as a zero on
  // the boundary.
  double min_modulus = 1e-20;
};

long count_zeros(const DirichletSeriesSpec& spec, const Rectangle& rect, const ZeroCountOptions& opt = {});

// (S(p+h) - S(p))/h and (S(p+2h) - 2S(p+h) + S(p))/h^2 for real p.
std::pair<LogMagnitude, LogMagnitude> difference_quotients(const DirichletSeriesSpec& spec, const Real& p,
                                                           const Real& h, const SeriesEvalOptions& opt = {});

}  // namespace barrierlab
