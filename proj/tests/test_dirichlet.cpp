#include <cmath>

#include "barrierlab/dirichlet.hpp"
#include "doctest.h"

using namespace barrierlab;
using namespace barrierlab::hp;

namespace {

double rel(const Complex& a, const Complex& b) { return rel_diff(a, b).to_double(); }

Complex value(const DirichletSeriesSpec& s, const Complex& p) { return eval_series(s, p).to_complex(); }

}  // namespace

TEST_CASE("builtin series formulas") {
  Real k4(4L, 256);
  CHECK(std::fabs(builtin_F().exponent(k4).to_double() - 5.545177444479562) < 1e-14);
  Real k1(1L, 256);
  Complex c = builtin_F2(2).coeff(k1);
  CHECK(rel(c, Complex(Real(2L, 256) / euler_e(256))) < 1e-70);
  CHECK(builtin_theta().exponent(Real(3L, 256)) == Real(9L, 256));
  CHECK(builtin_F2(0).log_coeff(k1).is_zero());
}

TEST_CASE("F against direct summation") {
  auto F = builtin_F();
  Complex one_over_e(Real(1L, 256) / euler_e(256));
  CHECK(rel(value(F, Complex(Real(-1e6, 256))), one_over_e) < 1e-70);
  CHECK(rel(value(F, Complex(Real(0L, 256))), Complex(Real("1.5734028091226202374996272036906634208337701644348", 256))) <
        1e-48);
  CHECK(rel(value(F, Complex(Real(0.5, 256))), Complex(Real("13.60904281793767067895620845472841219698532438921", 256))) <
        1e-47);
  Complex pc(Real("0.3", 256), Real(2L, 256));
  Complex want(Real("-0.11614875797035861779157992001660061904774934078335", 256),
               Real("-0.057764886538852665106969002751068622185864181586895", 256));
  CHECK(rel(value(F, pc), want) < 1e-47);
}

TEST_CASE("F2 and theta against direct summation") {
  CHECK(rel(value(builtin_F2(3), Complex(Real("0.95", 256))),
            Complex(Real("0.49838678663258901275931548241199501211495115653757", 256))) < 1e-47);
  CHECK(rel(value(builtin_theta(), Complex(Real("0.9", 256))),
            Complex(Real("2.3024956081989643496556412169344004469271626557229", 256))) < 1e-47);
}

TEST_CASE("F grows monotonically on (0, 1)") {
  auto F = builtin_F();
  Real prev(-1e300, 256);
  for (double p : {0.05, 0.2, 0.4, 0.6, 0.7}) {
    Real l = eval_series(F, Complex(Real(p, 256))).log_abs();
    CHECK(l > prev);
    prev = l;
  }
}

TEST_CASE("summation order does not matter") {
  auto F = builtin_F();
  SeriesEvalOptions fwd, rev;
  rev.reverse = true;
  Complex p(Real("0.6", 256), Real("3", 256));
  Complex a = eval_series(F, p, fwd).to_complex(), b = eval_series(F, p, rev).to_complex();
  CHECK(rel(a, b) < std::ldexp(1.0, -246));
}

TEST_CASE("growth profile and the barrier law") {
  auto F = builtin_F();
  GrowthProfile g7 = growth_profile(F, Real("0.7", 256));
  double d = std::log(g7.log_abs_sum.to_double()) - growth_law(Real("0.7", 256)).to_double();
  CHECK(std::fabs(d) <= 1.5);
  GrowthProfile g8 = growth_profile(F, Real("0.8", 256));
  CHECK(g8.log_abs_sum > g7.log_abs_sum);
  // brute-force scan oracle
  CHECK(g8.k_star == 58);
  // Stirling with the subleading logs
  long best = 1;
  double bv = -1e300;
  for (long k = 1; k < 100000; ++k) {
    double lk = std::log(static_cast<double>(k));
    double v = -0.2 * k * lk + k + std::log1p(lk) + 0.5 * lk;
    if (v > bv) {
      bv = v;
      best = k;
    }
  }
  CHECK(std::labs(best - g8.k_star) <= 2);
  CHECK(g8.log_abs_sum >= g8.log_max_term - std::log(1e6));
  GrowthProfile g9 = growth_profile(F, Real("0.9", 256));
  CHECK(std::fabs(g9.log_abs_sum.to_double() - 821.7624246586) < 1e-8);
  CHECK(g9.k_star == 8109);
  CHECK_THROWS_AS(growth_profile(F, Real("0.2", 256)), NumericError);
}

TEST_CASE("continuous evaluation joins the direct sum") {
  auto F = builtin_F();
  SeriesEvalOptions direct, cont;
  cont.direct_limit = 1000;
  direct.direct_limit = 1000000;
  for (const char* p : {"0.9", "0.91"}) {
    Real a = eval_series(F, Complex(Real(p, 256)), direct).log_abs();
    SeriesValue b = eval_series_detail(F, Complex(Real(p, 256)), cont);
    CHECK(b.continuous);
    CHECK(std::fabs((a - b.value.log_abs()).to_double()) < 1e-30);
  }
}

TEST_CASE("barrier guard") {
  CHECK_THROWS_AS(eval_series(builtin_F(), Complex(Real("0.9999999", 256))), NumericError);
  CHECK_NOTHROW(eval_series(builtin_theta(), Complex(Real("0.9999", 256))));
}

TEST_CASE("spike scan") {
  auto F = builtin_F();
  Real re("0.5", 256);
  auto sym = vertical_samples(F, re, Real(-4L, 256), Real(4L, 256), 17);
  for (size_t j = 0; j < sym.size(); ++j) {
    CHECK(std::fabs((sym[j].log_abs - sym[sym.size() - 1 - j].log_abs).to_double()) < 1e-60);
  }
  auto peaks = spike_scan(F, re, Real(0L, 256), Real(10L, 256), 41);
  REQUIRE(!peaks.empty());
  double bound = std::exp(growth_law(re).to_double()) + std::log(10.0);
  for (const auto& s : peaks) CHECK(s.log_abs.to_double() <= bound);
  for (size_t j = 1; j < peaks.size(); ++j) CHECK(peaks[j - 1].log_abs >= peaks[j].log_abs);
}

TEST_CASE("zero counting") {
  auto F = builtin_F();
  Rectangle r{Real(-2L, 256), Real(-1L, 256), Real(0L, 256), Real(1L, 256)};
  CHECK(count_zeros(F, r) == 0);
  // one zero near -0.40702 + 2.49460i
  Rectangle whole{Real(-1L, 256), Real(0L, 256), Real("1.5", 256), Real("3.5", 256)};
  Rectangle lower{Real(-1L, 256), Real(0L, 256), Real("1.5", 256), Real(3L, 256)};
  Rectangle upper{Real(-1L, 256), Real(0L, 256), Real(3L, 256), Real("3.5", 256)};
  Rectangle conj{Real(-1L, 256), Real(0L, 256), Real("-3.5", 256), Real("-1.5", 256)};
  long n = count_zeros(F, whole);
  CHECK(n == 1);
  CHECK(n == count_zeros(F, lower) + count_zeros(F, upper));
  CHECK(n == count_zeros(F, conj));
  Rectangle bad{Real("0.1", 256), Real("0.9995", 256), Real(0L, 256), Real(1L, 256)};
  CHECK_THROWS_AS(count_zeros(F, bad), NumericError);
}

TEST_CASE("series from JSON") {
  auto s = series_from_json(R"js({"name":"F","coeff":"(1+ln(k))/(e*gamma(k))","exponent":"k*ln(k)"})js");
  Complex p(Real("0.4", 256), Real("1", 256));
  CHECK(rel(value(s, p), value(builtin_F(), p)) < 1e-70);
  auto t = series_from_json(R"js({"builtin":"F2","m":3})js");
  CHECK(rel(value(t, Complex(Real("0.5", 256))), value(builtin_F2(3), Complex(Real("0.5", 256)))) == 0.0);
  auto u = series_from_json(R"js({"coeff":"builtin:theta","exponent":"k^2"})js");
  CHECK(rel(value(u, Complex(Real("0.5", 256))), value(builtin_theta(), Complex(Real("0.5", 256)))) < 1e-70);
  CHECK_THROWS_AS(series_from_json(R"js({"coeff":"1/(k+","exponent":"k"})js"), NumericError);
  CHECK_THROWS_AS(series_from_json(R"js({"coeff":"foo(k)","exponent":"k"})js"), NumericError);
  CHECK_THROWS_AS(series_from_json("not json"), NumericError);
}
