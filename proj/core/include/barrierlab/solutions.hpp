#pragma once

#include <gmpxx.h>

#include <vector>

#include "barrierlab/hp/complex.hpp"

namespace barrierlab {

using hp::Complex;
using hp::Real;

struct SolutionParams {
  Complex c;
  int m = 0;
  int precision_bits = hp::kDefaultPrecision;
};

struct SeriesOptions {
  long max_terms = 200000;
  // Distance to a positive integer below which y0 and y0_ml refuse.
  double pole_guard = 1e-30;
};

// Sum over k >= 1 of prod_{j=1..k} 1/(x - j).
Complex y0(const Complex& x, const SeriesOptions& opt = {});
// e^{-1} sum over k >= 1 of 1/((x - k) Gamma(k)).
Complex y0_ml(const Complex& x, const SeriesOptions& opt = {});
// Same sum with the k = skip term left out.
Complex y0_ml_without(const Complex& x, long skip, const SeriesOptions& opt = {});

// The entire solution y0 - (pi/e) cot(pi x)/Gamma(x). Within 1e-2 of a
// positive integer the pole of y0 and the pole of the cotangent term are
// cancelled analytically.
Complex y1(const Complex& x);
// y1 + c/Gamma(x)
Complex yc(const Complex& x, const Complex& c);
Complex yc(const Complex& x, const SolutionParams& params);

// |s(x+1) - s(x)/x - 1/x|
template <class S>
Real fe_residual(S s, const Complex& x) {
  Complex one(Real(1L, x.bits()), Real(0L, x.bits()));
  return abs(s(x + one) - s(x) / x - one / x);
}

struct FormalSeries {
  std::vector<mpz_class> exact;  // a_1..a_N
  int order() const { return static_cast<int>(exact.size()); }
  Real coeff(int n, int bits) const;  // a_n, 1-based
};

// Coefficients of the formal solution sum a_n x^{-n}, exact integers.
FormalSeries formal_series(int N);

// Least-squares coefficients b_1..b_K of sum b_n x^{-n} through (xs, ys).
std::vector<Real> fit_inverse_powers(const std::vector<Real>& xs, const std::vector<Real>& ys, int K);

struct RegionSC {
  Real C;
  int m = 0;
};

// Re z_m(x) >= C, z_m on the principal branch.
bool in_region_SC(const Complex& x, const RegionSC& region);

}  // namespace barrierlab
