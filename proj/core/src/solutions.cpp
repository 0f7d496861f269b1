#include "barrierlab/solutions.hpp"

#include <cmath>
#include <utility>

#include "barrierlab/hp/critical_time.hpp"
#include "barrierlab/hp/special.hpp"

namespace barrierlab {

using namespace hp;

namespace {

void guard_pole(const Complex& x, const SeriesOptions& opt) {
  Real n = round(x.re());
  if (n < 1.0) return;
  Complex d = x - n;
  if (abs(d) < Real(opt.pole_guard, 64)) {
    throw NumericError(ErrorCode::PoleAtPositiveInteger, "x = " + x.str(20) + " is at a pole");
  }
}

long magnitude_exp(const Complex& z) { return std::max(z.re().exponent(), z.im().exponent()); }

}  // namespace

Complex y0(const Complex& x, const SeriesOptions& opt) {
  guard_pole(x, opt);
  const int bits = x.bits();
  const int wp = bits + 16;
  Complex xx = x.with_bits(wp);
  Complex term(Real(1L, wp), Real(0L, wp));
  Complex sum(Real(0L, wp), Real(0L, wp));
  const double xr = x.re().to_double();
  const double xi = std::fabs(x.im().to_double());
  for (long k = 1; k <= opt.max_terms; ++k) {
    term /= xx - Real(k, wp);
    sum += term;
    // Every later ratio is below q = 1/min_{j>k}|x - j|, which is
    // 1/|x - k - 1| past Re x and at most 1/|Im x| before; then the tail is
    // at most |term| q / (1 - q).
    bool past = static_cast<double>(k) > xr + 3.0;
    if (past || xi > 2.0) {
      Real q = past ? Real(1L, wp) / abs(xx - Real(k + 1, wp)) : Real(1L, wp) / abs(xx.im());
      Real tail = abs(term) * q / (1.0 - q);
      if (sum.is_zero() || magnitude_exp(Complex(tail)) - magnitude_exp(sum) < -bits - 4) {
        return sum.with_bits(bits);
      }
    }
  }
  throw NumericError(ErrorCode::SlowConvergence, "y0 series at x = " + x.str(20));
}

Complex y0_ml_without(const Complex& x, long skip, const SeriesOptions& opt) {
  const int bits = x.bits();
  const int wp = bits + 16;
  Complex xx = x.with_bits(wp);
  Complex sum(Real(0L, wp), Real(0L, wp));
  const double ax = std::hypot(x.re().to_double(), x.im().to_double());
  for (long k = 1; k <= opt.max_terms; ++k) {
    const Real& rg = rgamma_int(k, wp);
    if (k != skip) sum += Complex(rg) / (xx - Real(k, wp));
    // For k > |x| + 1: |x - j| >= j - |x| >= 1 and 1/Gamma(j) decays
    // faster than geometrically, the tail is below 2/Gamma(k+1).
    if (static_cast<double>(k) > ax + 2.0) {
      const Real& next = rgamma_int(k + 1, wp);
      if (sum.is_zero() || next.exponent() + 1 - magnitude_exp(sum) < -bits - 4) {
        Complex r = sum / euler_e(wp);
        return r.with_bits(bits);
      }
    }
  }
  throw NumericError(ErrorCode::SlowConvergence, "y0_ml series at x = " + x.str(20));
}

Complex y0_ml(const Complex& x, const SeriesOptions& opt) {
  guard_pole(x, opt);
  return y0_ml_without(x, 0, opt);
}

namespace {

// cot(pi x)/Gamma(x), evaluated through cos(pi x) Gamma(1-x)/pi on the left.
Complex cot_over_gamma(const Complex& x) {
  const int bits = x.bits();
  Real n = round(x.re());
  Complex r = x - n;  // cot has period 1
  Complex arg = r * pi(bits);
  if (x.re() < 0.5) {
    Complex cpx = cos(arg);
    if (n.to_long() & 1) cpx = -cpx;
    Complex one_minus = Real(1L, bits) - x;
    return cpx * gamma(one_minus) / pi(bits);
  }
  Complex cot = cos(arg) / sin(arg);
  return cot * rgamma(x);
}

}  // namespace

Complex y1(const Complex& x) {
  const int bits = x.bits();
  Real n = round(x.re());
  Complex eps = x - n;
  if (n >= 1.0 && abs(eps) < 1e-2) {
    // With e = x - n:
    //   e^{-1}/(e Gamma(n)) - (pi/e) cot(pi e)/Gamma(n + e)
    //     = e^{-1} [ (1/Gamma(n) - 1/Gamma(n+e))/e + (1 - pi e cot(pi e))/(e Gamma(n+e)) ]
    // and 1 - pi e cot(pi e) = 2 sum_{k>=1} zeta(2k) e^{2k}.
    const long nn = n.to_long();
    Complex regular = y0_ml_without(x, nn);
    const double ae = abs(eps).to_double();
    const int extra = ae > 0.0 ? static_cast<int>(std::ceil(-std::log2(ae))) : 0;
    const int wp = bits + extra + 24;
    Complex e = eps.with_bits(wp);
    Complex bracket(Real(0L, wp), Real(0L, wp));
    if (e.is_zero()) {
      // limit: psi(n)/Gamma(n), psi(n) = H_{n-1} - gamma
      Real psi = -euler_gamma(wp);
      for (long j = 1; j < nn; ++j) psi += Real(1L, wp) / Real(j, wp);
      bracket = Complex(psi * rgamma_int(nn, wp));
    } else {
      Complex xn = Complex(Real(nn, wp)) + e;
      Complex rgx = rgamma(xn);
      Complex diff = (Complex(rgamma_int(nn, wp)) - rgx) / e;
      Complex e2 = e * e;
      Complex pw = e;  // e^{2k-1}
      Complex s(Real(0L, wp), Real(0L, wp));
      for (unsigned long k = 1; k < 4000; ++k) {
        Real zeta(wp, nullptr);
        mpfr_zeta_ui(zeta.raw(), 2 * k, MPFR_RNDN);
        Complex t = pw * zeta;
        s += t;
        if (magnitude_exp(t) - std::max(magnitude_exp(s), -100000L) < -wp - 4) break;
        pw *= e2;
      }
      bracket = diff + s * 2.0 * rgx;
    }
    Complex sing = bracket / euler_e(wp);
    return regular + sing.with_bits(bits);
  }
  Complex base = y0(x);
  Complex corr = cot_over_gamma(x) * pi(bits) / euler_e(bits);
  return base - corr;
}

Complex yc(const Complex& x, const Complex& c) {
  if (c.is_zero()) return y1(x);
  return y1(x) + c * rgamma(x);
}

Complex yc(const Complex& x, const SolutionParams& params) { return yc(x, params.c); }

Real FormalSeries::coeff(int n, int bits) const {
  if (n < 1 || n > order()) throw NumericError(ErrorCode::InvalidArgument, "formal series index out of range");
  Real r(bits, nullptr);
  mpfr_set_z(r.raw(), exact[n - 1].get_mpz_t(), MPFR_RNDN);
  return r;
}

FormalSeries formal_series(int N) {
  if (N < 1) throw NumericError(ErrorCode::InvalidArgument, "formal_series needs N >= 1");
  // Matching x^{-N} in sum a_n (x+1)^{-n} = x^{-1} + sum a_n x^{-n-1}:
  //   sum_{n<=N} a_n (-1)^{N-n} C(N-1, N-n) = [N = 1] + a_{N-1}.
  FormalSeries fs;
  fs.exact.reserve(N);
  for (int M = 1; M <= N; ++M) {
    mpz_class a = (M == 1) ? 1 : 0;
    if (M > 1) a += fs.exact[M - 2];
    for (int n = 1; n < M; ++n) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), M - 1, M - n);
      if ((M - n) % 2 == 0) {
        a -= fs.exact[n - 1] * binom;
      } else {
        a += fs.exact[n - 1] * binom;
      }
    }
    fs.exact.push_back(a);
  }
  return fs;
}

std::vector<Real> fit_inverse_powers(const std::vector<Real>& xs, const std::vector<Real>& ys, int K) {
  const size_t n = xs.size();
  if (n != ys.size() || K < 1 || n < static_cast<size_t>(K)) {
    throw NumericError(ErrorCode::InvalidArgument, "fit needs at least K samples");
  }
  const int bits = xs.front().bits();
  // Normal equations in t = x0/x; the scaling keeps the Gram matrix tame.
  Real x0 = xs.front();
  std::vector<std::vector<Real>> A(K, std::vector<Real>(K + 1, Real(0L, bits)));
  for (size_t i = 0; i < n; ++i) {
    std::vector<Real> row(K, Real(0L, bits));
    Real t = x0 / xs[i];
    Real pw = t;
    for (int j = 0; j < K; ++j) {
      row[j] = pw;
      pw *= t;
    }
    for (int a = 0; a < K; ++a) {
      for (int b = 0; b < K; ++b) A[a][b] += row[a] * row[b];
      A[a][K] += row[a] * ys[i];
    }
  }
  for (int col = 0; col < K; ++col) {
    int piv = col;
    for (int r = col + 1; r < K; ++r) {
      if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
    }
    std::swap(A[col], A[piv]);
    if (A[col][col].is_zero()) throw NumericError(ErrorCode::IllConditioned, "singular fit");
    for (int r = col + 1; r < K; ++r) {
      Real f = A[r][col] / A[col][col];
      for (int c = col; c <= K; ++c) A[r][c] -= f * A[col][c];
    }
  }
  std::vector<Real> b(K, Real(0L, bits));
  for (int r = K - 1; r >= 0; --r) {
    Real s = A[r][K];
    for (int c = r + 1; c < K; ++c) s -= A[r][c] * b[c];
    b[r] = s / A[r][r];
  }
  Real scale = x0;
  for (int j = 0; j < K; ++j) {
    b[j] *= scale;
    scale *= x0;
  }
  return b;
}

bool in_region_SC(const Complex& x, const RegionSC& region) {
  return zm(x, region.m).re() >= region.C;
}

}  // namespace barrierlab
