#pragma once

#include "barrierlab/hp/complex.hpp"
#include "barrierlab/hp/log_magnitude.hpp"

namespace barrierlab {

using hp::Complex;
using hp::LogMagnitude;
using hp::Real;

// e^{-1} exp(p + e^p), the solution of e^{-p} Y - int_0^p Y - 1 = 0.
Complex Y_acc(const Complex& p);
LogMagnitude Y_acc_log(const Complex& p);

struct IntegralResidual {
  Complex lhs;  // e^{-p} Y(p)
  Complex integral;
  Real residual;
};

// |e^{-p} Y_acc(p) - int_0^p Y_acc - 1| with the integral by quadrature.
IntegralResidual acc_integral_residual(const Complex& p, double rel_tol = 0.0);

// From 0 along the real axis to `shift`, up to shift + i n pi, then out along
// Im p = n pi, where e^{e^p} decays like exp(-e^{Re p}).
struct PathSpec {
  int n = 1;
  double shift = 0.0;
  // 0: chosen from |x| and the precision.
  double truncation = 0.0;
};

struct PathValue {
  Complex value;
  Real err_estimate;
  Real truncation;
};

// int_{R_n} e^{-xp} e^{p + e^p - 1} dp for n = +1 or -1.
PathValue f_path_detail(const Complex& x, const PathSpec& path);
Complex f_path(const Complex& x, int n);
inline Complex f_plus(const Complex& x) { return f_path(x, 1); }
inline Complex f_minus(const Complex& x) { return f_path(x, -1); }

struct SaddleCheck {
  Complex ratio;
  Real deviation;  // |ratio - 1|
  // |ratio + 1|: the path integral itself tends to minus the asymptote.
  Real deviation_negated;
};

// f_plus(-t) against sqrt(2 pi) e^{t ln t - t + i pi t + ln(t)/2 - 1}.
SaddleCheck saddle_check(const Real& t);

struct TruncationReport {
  Complex x;
  int N_star = 0;
  Complex partial_sum;
  Complex reference;  // y1(x)
  Real error;
  Real normalized_error;  // error * |Gamma(x)|
  Real least_term;
};

TruncationReport least_term_truncation(const Complex& x, int max_order);

}  // namespace barrierlab
