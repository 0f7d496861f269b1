#include <cmath>

#include "barrierlab/borel.hpp"
#include "doctest.h"

using namespace barrierlab;
using namespace barrierlab::hp;

namespace {

constexpr int kBits = 96;

BorelOptions opts() {
  BorelOptions o;
  o.bits = kBits;
  o.rel_tol = 1e-15;
  return o;
}

Complex cx(double re, double im = 0.0) { return Complex(re, im, kBits); }
Complex cs(const char* re, const char* im = "0") { return Complex(Real(re, kBits), Real(im, kBits)); }
double rel(const Complex& a, const Complex& b) { return rel_diff(a, b).to_double(); }
double d(const Real& r) { return r.to_double(); }

}  // namespace

TEST_CASE("hairpin and decomposition agree left of the origin") {
  for (double p : {-3.0, -2.0, -1.0, -0.5}) {
    BorelValue a = Y_direct(cx(p), opts());
    BorelValue b = Y_decomposed(cx(p), opts());
    CHECK(a.method == BorelMethod::DirectHairpin);
    CHECK(b.method == BorelMethod::Decomposed);
    CHECK(rel(a.value, b.value) < 1e-8);
  }
  BorelValue y = Y_direct(cx(-1.0), opts());
  CHECK(rel(y.value, cs("0.281591652065235243236593", "-0.05783179206385747551560468")) < 1e-16);
}

TEST_CASE("hairpin symmetries") {
  Complex p = cx(-1.0, 0.7);
  BorelValue a = Y_direct(p, opts());
  BorelValue b = Y_direct(conj(p), opts());
  CHECK(rel(b.value, conj(a.value)) < 1e-16);

  BorelOptions half = opts();
  half.delta = 0.125;
  BorelValue c = Y_direct(p, half);
  CHECK(d(abs(c.value - a.value)) < 10 * d(a.err_estimate + c.err_estimate));
}

TEST_CASE("decomposed rays can rotate") {
  Complex p = cx(-1.0);
  Real phi = default_phi(p);
  BorelValue a = Y_decomposed(p, phi, opts());
  BorelValue b = Y_decomposed(p, phi + Real(0.2, kBits), opts());
  CHECK(d(abs(a.value - b.value)) < 10 * d(a.err_estimate + b.err_estimate));
  // e^{pz} grows along Im w = pi when p < 0
  CHECK_THROWS_AS(Y_decomposed(p, pi(kBits), opts()), NumericError);
}

TEST_CASE("decomposition continues past Re p = 0") {
  BorelValue a = Y_decomposed(cx(0.5), opts());
  CHECK(rel(a.value, cs("13.74061530361431460161734")) < 1e-16);
  CHECK(d(a.err_estimate) < 1e-6 * d(abs(a.value)));
  BorelValue b = Y_decomposed(cx(0.9), opts());
  // |Y(0.9)| is near 1e356, beyond double range
  CHECK(d(b.err_estimate / abs(b.value)) < 1e-6);
  CHECK(d(abs(b.value.im()) / abs(b.value)) < 1e-20);
}

TEST_CASE("left of the barrier") {
  BorelValue h2 = H_left(cx(0.5), 2, opts());
  BorelValue h3 = H_left(cx(0.5), 3, opts());
  CHECK(h2.method == BorelMethod::BromwichLeft);
  CHECK(rel(h2.value, cs("0.127216664116881122495833")) < 1e-16);
  CHECK(rel(h3.value, cs("0.05384584760907527144280337")) < 1e-16);
  CHECK(std::fabs(d(h2.value.im())) <= d(h2.err_estimate) + 1e-25);
  CHECK_THROWS_AS(H_left(cx(0.5), 1, opts()), NumericError);
}

TEST_CASE("left Borel transform near the origin") {
  // H_left ~ -a_1 ln p: the log-slope tends to a_1 = 1 with a deviation of
  // order 1/ln(1/p).
  auto slope = [](double p1, double p2) {
    double h1 = d(H_left(cx(p1), 2, opts()).value.re());
    double h2 = d(H_left(cx(p2), 2, opts()).value.re());
    return (h2 - h1) / (std::log(p1) - std::log(p2));
  };
  double s1 = slope(1e-6, 1e-8), s2 = slope(1e-16, 1e-24);
  CHECK(s1 < s2);
  CHECK(std::fabs(s2 - 1.0) < 0.05);
  CHECK(std::fabs(s2 - 1.0) * std::log(1e20) < 2.0);
}

TEST_CASE("right of the barrier") {
  Complex zero = cx(0.0);
  BorelValue a = H_right(cx(1.5), zero, 2, opts());
  BorelValue b = H_right(cx(3.0), zero, 2, opts());
  CHECK(a.method == BorelMethod::HairpinRight);
  CHECK(rel(a.value, cs("0.000448224260943092588660671")) < 1e-15);
  CHECK(d(abs(b.value)) < d(abs(a.value)));
  CHECK(std::fabs(d(a.value.im())) <= d(a.err_estimate) + 1e-25);

  BorelValue g = G_right(cx(1.5), 3, opts());
  CHECK(rel(g.value, cs("0.0007067586666800710234228363")) < 1e-15);

  Complex c1 = cx(0.7, -0.2), c2 = cx(-1.3, 0.4);
  Complex p = cx(1.2, 0.3);
  Complex lhs = H_right(p, c1, 2, opts()).value - H_right(p, c2, 2, opts()).value;
  Complex rhs = (c1 - c2) * G_right(p, 2, opts()).value;
  CHECK(rel(lhs, rhs) < 1e-14);

  CHECK_THROWS_AS(H_right(cx(1.0 + 1e-7), zero, 2, opts()), NumericError);
}

TEST_CASE("right hairpin legs off the real axis") {
  Complex p = cx(1.05, 0.5);
  BorelValue a = H_right(p, cx(0.0), 2, opts());
  BorelOptions shifted = opts();
  shifted.leg_shift = 0.15;
  BorelValue b = H_right(p, cx(0.0), 2, shifted);
  CHECK(d(abs(a.value - b.value)) < 10 * d(a.err_estimate + b.err_estimate) + 1e-14 * d(abs(a.value)));
  BorelValue c = H_right(conj(p), cx(0.0), 2, opts());
  CHECK(rel(c.value, conj(a.value)) < 1e-14);
}

TEST_CASE("barrier jump") {
  Real t(1L, kBits), e(0.05, kBits);
  BarrierJump j = barrier_jump(t, e, cx(0.0), 2, opts());
  BarrierJump k = barrier_jump(-t, e, cx(0.0), 2, opts());
  CHECK(rel(j.jump, j.right - j.left) < 1e-30);
  CHECK(rel(k.jump, conj(j.jump)) < 1e-14);
  CHECK(d(abs(j.jump)) > 10 * d(j.err_left + j.err_right));
  CHECK_THROWS_AS(barrier_jump(t, Real(0.5, kBits), cx(0.0), 2, opts()), NumericError);
}

TEST_CASE("calibration") {
  Calibration ex = calibrate_c(3, opts());
  CHECK(std::fabs(d(ex.c.re()) + 1.3276) < 1e-3);
  CHECK(std::fabs(d(ex.c.im())) < 1e-20);
  Calibration at = calibrate_c(3, opts(), 0.05, CalibrationRule::MatchAtEps0);
  BarrierJump j = barrier_jump(Real(0L, kBits), Real(0.05, kBits), at.c, 3, opts());
  CHECK(d(abs(j.jump)) < 1e-14);
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(Y_direct(cx(-0.05), opts()), NumericError);
  CHECK_THROWS_AS(Y_decomposed(cx(1.0 - 1e-7), opts()), NumericError);
  try {
    H_left(cx(1.0 - 1e-7), 2, opts());
    FAIL("expected BarrierProximity");
  } catch (const NumericError& e) {
    CHECK(e.code() == ErrorCode::BarrierProximity);
  }
  BorelOptions tight = opts();
  tight.max_radius = 50;
  try {
    Y_direct(cx(-0.5), tight);
    FAIL("expected TailBoundViolated");
  } catch (const NumericError& e) {
    CHECK(e.code() == ErrorCode::TailBoundViolated);
  }
}
