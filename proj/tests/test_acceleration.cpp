#include <cmath>

#include "barrierlab/acceleration.hpp"
#include "barrierlab/hp/special.hpp"
#include "barrierlab/solutions.hpp"
#include "doctest.h"

using namespace barrierlab;
using namespace barrierlab::hp;

namespace {

constexpr int kBits = 256;

Complex cx(double re, double im = 0.0) { return Complex(re, im, kBits); }
Complex cs(const char* re, const char* im = "0") { return Complex(Real(re, kBits), Real(im, kBits)); }
double rel(const Complex& a, const Complex& b) { return rel_diff(a, b).to_double(); }

}  // namespace

TEST_CASE("accelerated Borel function") {
  CHECK(rel(Y_acc(cx(0.0)), cx(1.0)) < 1e-75);
  Complex want = Complex(euler_e(kBits) * 2.0);
  CHECK(rel(Y_acc(Complex(log(Real(2L, kBits)))), want) < 1e-75);
  CHECK(acc_integral_residual(cx(1.3)).residual < 1e-60);
  CHECK(acc_integral_residual(cx(0.4, 1.1)).residual < 1e-60);
  // exp(e^30) is far outside any exponent range
  LogMagnitude big = Y_acc_log(cx(30.0));
  CHECK(std::fabs(big.log_abs().to_double() - (30.0 + std::exp(30.0) - 1.0)) < 1e-3);
  CHECK_THROWS_AS(Y_acc(cx(30.0)), NumericError);
}

TEST_CASE("accelerated function solves its differential equation") {
  // Y' = (1 + e^p) Y; central differences with step 2^{-bits/3}
  Real h = ldexp(Real(1L, kBits), -kBits / 3);
  for (double re : {-1.7, -0.3, 0.6, 1.4}) {
    for (double im : {-1.1, 0.0, 0.9}) {
      Complex p = cx(re, im);
      Complex dY = (Y_acc(p + Complex(h)) - Y_acc(p - Complex(h))) / (h * 2.0);
      Complex rhs = (exp(p) + 1.0) * Y_acc(p);
      CHECK(abs(dY - rhs).to_double() < 1e-45 * abs(rhs).to_double());
    }
  }
}

TEST_CASE("path Laplace transforms") {
  CHECK(rel(f_plus(cx(2.5)), cs("0.5651213148992842156363002122465153205547",
                                 "0.8693991095643895774122114843294229989134")) < 1e-38);
  CHECK(rel(f_plus(cx(0.5, 1.0)), cs("-4.018184020247420390566818633516944455594",
                                      "2.121480492379142555915085463769918976037")) < 1e-38);
  Complex d = f_plus(cx(0.5)) - f_minus(cx(0.5));
  CHECK(rel(d, cs("0", "1.30409866434658436611831722649413449837")) < 1e-38);
  Complex x = cx(1.7, 0.6);
  CHECK(rel(f_plus(conj(x)), conj(f_minus(x))) < 1e-70);
}

TEST_CASE("median and difference identities") {
  for (const Complex& x : {cx(2.5), cx(3.3), cx(-1.2), cx(0.5, 1.0)}) {
    Complex fp = f_plus(x), fm = f_minus(x);
    CHECK(rel((fp + fm) / 2.0, y1(x)) < 1e-10);
    Complex want = mul_i(pi(kBits) * 2.0 / euler_e(kBits) * rgamma(x));
    CHECK(abs(fp - fm - want).to_double() < 1e-10 * abs(fp - fm).to_double());
  }
}

TEST_CASE("path independence") {
  Complex x = cx(3.3);
  PathSpec a, b;
  b.shift = 0.3;
  PathValue va = f_path_detail(x, a), vb = f_path_detail(x, b);
  CHECK(abs(va.value - vb.value).to_double() <= 10 * (va.err_estimate + vb.err_estimate).to_double() + 1e-70);
  PathSpec bad;
  bad.n = 2;
  CHECK_THROWS_AS(f_path_detail(x, bad), NumericError);
}

TEST_CASE("saddle asymptotics") {
  SaddleCheck s20 = saddle_check(Real(20L, kBits));
  CHECK(rel(s20.ratio, cs("-1.004175010867765321460494208471752931589")) < 1e-35);
  SaddleCheck s40 = saddle_check(Real(40L, kBits));
  SaddleCheck s60 = saddle_check(Real(60L, kBits));
  CHECK(s20.deviation_negated > s40.deviation_negated);
  CHECK(s40.deviation_negated > s60.deviation_negated);
  CHECK((s40.deviation_negated / s20.deviation_negated).to_double() < 0.75);
  CHECK(std::fabs(abs(s60.ratio).to_double() - 1.0) < 2e-3);
  CHECK_THROWS_AS(saddle_check(Real(5L, kBits)), NumericError);
}

TEST_CASE("least term truncation") {
  TruncationReport r = least_term_truncation(cx(6.0), 120);
  CHECK(r.N_star == 11);
  CHECK(r.error < r.least_term * 10.0);
  FormalSeries fs = formal_series(12);
  Real t10 = fs.coeff(10, kBits) / pow(Real(6L, kBits), Real(10L, kBits));
  Real t12 = fs.coeff(12, kBits) / pow(Real(6L, kBits), Real(12L, kBits));
  CHECK(r.least_term <= t10);
  CHECK(r.least_term <= t12);
  for (double x : {8.0, 10.0, 12.0}) {
    TruncationReport q = least_term_truncation(cx(x), 120);
    CHECK(q.error < q.least_term * 10.0);
    CHECK(q.normalized_error.to_double() < 1.0);
  }
  CHECK_THROWS_AS(least_term_truncation(cx(12.0), 20), NumericError);
  CHECK_THROWS_AS(least_term_truncation(cx(2.0), 50), NumericError);
}
