// One line per acceptance criterion. Usage: acceptance <path to barrierlab cli>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "barrierlab/acceleration.hpp"
#include "barrierlab/borel.hpp"
#include "barrierlab/dirichlet.hpp"
#include "barrierlab/hp/critical_time.hpp"
#include "barrierlab/hp/special.hpp"
#include "barrierlab/solutions.hpp"

using namespace barrierlab;
using namespace barrierlab::hp;

namespace {

constexpr int kBits = 256;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string sci(const Real& v) { return v.str(4); }

Real R(const char* s) { return Real(s, kBits); }
Complex cx(double re, double im = 0.0) { return Complex(re, im, kBits); }

BorelOptions borel_opts() {
  BorelOptions o;
  o.bits = kBits;
  o.rel_tol = 1e-20;
  return o;
}

// 1 < |x| < 20, at least 0.1 away from the positive integers
std::vector<Complex> random_points(int count, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> r(1.0, 20.0), th(-M_PI, M_PI);
  std::vector<Complex> pts;
  while (static_cast<int>(pts.size()) < count) {
    std::complex<double> z = std::polar(r(gen), th(gen));
    double n = std::round(z.real());
    if (n >= 1.0 && std::abs(z - n) < 0.1) continue;
    if (std::abs(z) <= 1.0 || std::abs(z) >= 20.0) continue;
    pts.emplace_back(Real(z.real(), kBits), Real(z.imag(), kBits));
  }
  return pts;
}

Outcome functional_equation() {
  auto pts = random_points(100, 20240601);
  Complex c(R("1"), R("1"));
  std::vector<std::pair<const char*, std::function<Complex(const Complex&)>>> sols = {
      {"y0", [](const Complex& x) { return y0(x); }},
      {"y0_ml", [](const Complex& x) { return y0_ml(x); }},
      {"y1", [](const Complex& x) { return y1(x); }},
      {"yc", [&c](const Complex& x) { return yc(x, c); }},
  };
  Outcome o{true, ""};
  for (auto& [name, s] : sols) {
    Real worst(0L, kBits);
    for (const auto& x : pts) worst = max(worst, fe_residual(s, x));
    o.pass = o.pass && worst < R("1e-50");
    o.detail += std::string(name) + " " + sci(worst) + " ";
  }
  o.detail += "(max residual over 100 points, bound 1e-50)";
  return o;
}

// Neville extrapolation of g(h) to h = 0 on h_j = h0 / 2^j.
Complex extrapolate(const std::function<Complex(const Real&)>& g, const Real& h0, int levels) {
  std::vector<Real> h;
  std::vector<Complex> t;
  for (int j = 0; j < levels; ++j) {
    h.push_back(ldexp(h0, -j));
    t.push_back(g(h.back()));
  }
  for (int k = 1; k < levels; ++k) {
    for (int j = levels - 1; j >= k; --j) {
      t[j] = (t[j] * h[j - k] - t[j - 1] * h[j]) / (h[j - k] - h[j]);
    }
  }
  return t.back();
}

Outcome residues() {
  Real worst(0L, kBits);
  for (long n = 1; n <= 12; ++n) {
    auto g = [n](const Real& h) { return y0(Complex(Real(n, kBits) + h)) * h; };
    Complex res = extrapolate(g, R("0.125"), 14);
    Real want = rgamma_int(n, kBits) / euler_e(kBits);
    worst = max(worst, rel_diff(res, Complex(want)));
  }
  return {worst < R("1e-25"), "max relative error " + sci(worst) + " over n = 1..12, bound 1e-25"};
}

Outcome mittag_leffler() {
  Real worst(0L, kBits);
  for (const auto& x : random_points(50, 77)) worst = max(worst, rel_diff(y0_ml(x), y0(x)));
  return {worst < R("1e-35"), "max |y0 - y0_ml|/|y0| " + sci(worst) + " over 50 points, bound 1e-35"};
}

Outcome formal_series_check() {
  FormalSeries fs = formal_series(12);
  const long bell[] = {1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597};
  bool exact = true;
  for (int n = 1; n <= 12; ++n) exact = exact && fs.exact[n - 1] == bell[n - 1];
  std::vector<Real> xs, ys;
  for (int i = 0; i < 16; ++i) {
    Real x = Real(50L, kBits) + Real(50L, kBits) * Real(i, kBits) / 15.0;
    xs.push_back(x);
    ys.push_back(y1(Complex(x)).re());
  }
  auto b = fit_inverse_powers(xs, ys, 16);
  double worst = 0;
  for (int n = 1; n <= 5; ++n) worst = std::max(worst, std::fabs((b[n - 1] / fs.coeff(n, kBits)).to_double() - 1.0));
  return {exact && worst < 1e-6, std::string("a_1..a_12 ") + (exact ? "equal" : "differ from") +
                                     " the Bell numbers; fit of y1 on [50, 100] recovers a_1..a_5 to " + sci(worst)};
}

Outcome borel_cross_check() {
  double worst = 0;
  for (double p : {-3.0, -2.0, -1.0, -0.5}) {
    BorelValue a = Y_direct(cx(p), borel_opts()), b = Y_decomposed(cx(p), borel_opts());
    worst = std::max(worst, rel_diff(a.value, b.value).to_double());
  }
  bool ok = worst < 1e-8;
  std::string d = "max relative difference " + sci(worst) + " (bound 1e-8);";
  for (const char* p : {"0.5", "0.9"}) {
    BorelValue v = Y_decomposed(Complex(R(p)), borel_opts());
    Real r = v.err_estimate / abs(v.value);
    ok = ok && v.value.re().is_finite() && r < R("1e-6");
    d += std::string(" Y(") + p + ") = " + v.value.re().str(8) + " err/|Y| " + sci(r);
  }
  return {ok, d};
}

Real lnln_discrepancy(const DirichletSeriesSpec& F, const char* p) {
  Real pr = R(p);
  LogMagnitude v = eval_series(F, Complex(pr));
  return log(v.log_abs()) - growth_law(pr);
}

Outcome growth_law_check() {
  DirichletSeriesSpec F = builtin_F();
  bool ok = true;
  std::string d = "d(p) =";
  for (const char* p : {"0.6", "0.7", "0.8", "0.9"}) {
    Real v = lnln_discrepancy(F, p);
    ok = ok && abs(v) <= 1.5;
    d += " " + sci(v);
  }
  d += " (bound 1.5); |d(p_j+1) - d(p_j)| on p = 0.9..0.995:";
  std::vector<Real> lad;
  for (const char* p : {"0.9", "0.95", "0.975", "0.99", "0.995"}) lad.push_back(lnln_discrepancy(F, p));
  Real prev = abs(lad[1] - lad[0]) + 1.0;
  for (size_t j = 1; j < lad.size(); ++j) {
    Real step = abs(lad[j] - lad[j - 1]);
    ok = ok && step < prev;
    prev = step;
    d += " " + sci(step);
  }
  return {ok, d};
}

Outcome smoothing() {
  const double ladder[] = {0.099, 0.05, 0.025, 0.01, 0.005, 0.0025, 0.0012};
  // ln of the largest quotient over the ladder minus ln of the first one
  auto growth = [&](const DirichletSeriesSpec& s) {
    Real f1, f2, b1, b2;
    for (size_t i = 0; i < std::size(ladder); ++i) {
      Real q(ladder[i], kBits);
      auto [d1, d2] = difference_quotients(s, Real(1L, kBits) - q, q / 10.0);
      if (i == 0) {
        f1 = b1 = d1.log_abs();
        f2 = b2 = d2.log_abs();
      }
      b1 = max(b1, d1.log_abs());
      b2 = max(b2, d2.log_abs());
    }
    return std::pair<Real, Real>{b1 - f1, b2 - f2};
  };
  auto g2 = growth(builtin_F2(3));
  auto gF = growth(builtin_F());
  Real lim = log(R("1e3"));
  bool ok = g2.first < lim && g2.second < lim && gF.first >= lim && gF.second >= lim;
  return {ok, "largest over first difference quotient on 1-p in [0.0012, 0.099]: F2 (m = 3) " +
                  sci(exp(g2.first)) + ", " + sci(exp(g2.second)) + " (< 1e3); F e^" + sci(gF.first) + ", e^" +
                  sci(gF.second) + " (>= 1e3)"};
}

Outcome acceleration_identities() {
  Real worst_res(0L, kBits);
  for (int i = 0; i <= 12; ++i) {
    worst_res = max(worst_res, acc_integral_residual(Complex(Real(i, kBits) / 4.0)).residual);
  }
  Real worst_med(0L, kBits), worst_diff(0L, kBits);
  for (const Complex& x : {cx(2.5), cx(3.3), cx(-1.2), cx(0.5, 1.0)}) {
    Complex fp = f_plus(x), fm = f_minus(x);
    worst_med = max(worst_med, rel_diff((fp + fm) / 2.0, y1(x)));
    Complex want = mul_i(pi(kBits) * 2.0 / euler_e(kBits) * rgamma(x));
    worst_diff = max(worst_diff, rel_diff(fp - fm, want));
  }
  bool ok = worst_res < R("1e-60") && worst_med < R("1e-10") && worst_diff < R("1e-10");
  return {ok, "integral residual " + sci(worst_res) + " on p = 0..3 (1e-60); median " + sci(worst_med) +
                  ", difference " + sci(worst_diff) + " (1e-10)"};
}

Outcome saddle() {
  SaddleCheck s20 = saddle_check(Real(20L, kBits)), s40 = saddle_check(Real(40L, kBits));
  Real factor = s20.deviation / s40.deviation;
  bool ok = s20.deviation < R("0.1") && factor >= R("1.3");
  return {ok, "deviation " + sci(s20.deviation) + " at t = 20 (bound 0.1), factor " + sci(factor) +
                  " to t = 40 (bound 1.3); ratio(20) = " + s20.ratio.re().str(7) + ", |ratio + 1| " +
                  sci(s20.deviation_negated) + " -> " + sci(s40.deviation_negated)};
}

Outcome least_term() {
  bool ok = true;
  std::string d = "normalized error";
  Real prev(0L, kBits);
  bool first = true;
  for (double x : {6.0, 8.0, 10.0, 12.0}) {
    TruncationReport r = least_term_truncation(cx(x), 120);
    ok = ok && r.normalized_error.is_finite() && (first || r.normalized_error <= prev);
    prev = r.normalized_error;
    first = false;
    d += " " + sci(r.normalized_error) + " (N* = " + std::to_string(r.N_star) + ")";
  }
  return {ok, d + " at x = 6, 8, 10, 12; must be non-increasing"};
}

Outcome barrier_crossing() {
  Calibration cal = calibrate_c(3, borel_opts());
  bool ok = true;
  std::string d = "c = " + cal.c.re().str(6) + "; |jump| on R+:";
  Real prev(0L, kBits);
  bool first = true;
  for (const char* e : {"0.1", "0.05", "0.025"}) {
    BarrierJump j = barrier_jump(Real(0L, kBits), R(e), cal.c, 3, borel_opts());
    ok = ok && (first || abs(j.jump) < prev);
    prev = abs(j.jump);
    first = false;
    d += " " + sci(prev);
  }
  d += "; off-axis |jump|/err:";
  for (const char* t : {"0.5", "1", "2"}) {
    BarrierJump j = barrier_jump(R(t), R("0.05"), cal.c, 3, borel_opts());
    Real err = j.err_left + j.err_right;
    ok = ok && abs(j.jump) > err * 10.0;
    d += " " + sci(abs(j.jump)) + "/" + sci(err);
  }
  return {ok, d};
}

Outcome roundtrip() {
  // the roundtrip needs far fewer bits than the suite default
  const int bits = 96;
  RoundtripOptions opt;
  opt.borel.bits = bits;
  opt.borel.rel_tol = 1e-12;
  Calibration cal = calibrate_c(2, opt.borel);
  std::vector<Complex> xs;
  bool ok = true;
  std::string d = "c = " + cal.c.re().str(6) + ";";
  for (const char* x : {"9.5", "11", "12.5"}) {
    Complex xc(Real(x, bits));
    double z = zm(xc, 2).re().to_double();
    ok = ok && z >= 5.0 && z <= 15.0;
    xs.push_back(xc);
  }
  auto res = laplace_roundtrip(xs, cal.c, 2, opt);
  for (const auto& r : res) {
    ok = ok && r.rel_err < 1e-3;
    d += " x = " + r.x.re().str(3) + " (Re z_2 = " + r.z.re().str(4) + "): " + sci(r.rel_err);
  }
  return {ok, d + " (bound 1e-3)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  if (cli.empty()) return {false, "no CLI path given"};
  fs::path dir = fs::temp_directory_path() / ("barrierlab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::string> runs = {
      "eval --solution y1 --grid x_re=-3.5:12.5:9 --grid x_im=-1,0,2",
      "scan-barrier --series F --grid p_re=-2:0.9:7 --grid p_im=-3:3:5",
      "borel --precision 96 --tol 1e-12 --grid p_re=-2,-1,0.5 --grid p_im=-0.3,0.3",
      "cross-barrier --precision 96 --tol 1e-12 --m 3 --c calibrate --grid t=0,1 --grid eps=0.05",
      "appendix --grid t=20 --grid x=3.3,8",
  };
  bool ok = true;
  std::string d;
  for (size_t i = 0; i < runs.size(); ++i) {
    std::string out[2];
    for (int k = 0; k < 2; ++k) {
      fs::path f = dir / ("run" + std::to_string(i) + "_" + std::to_string(k) + ".csv");
      // the second run uses a different worker count
      std::string cmd = "\"" + cli + "\" " + runs[i] + " --workers " + (k ? "3" : "1") + " --out \"" + f.string() +
                        "\" > /dev/null 2>&1";
      int rc = std::system(cmd.c_str());
      if (rc != 0) {
        ok = false;
        d += "[" + runs[i].substr(0, runs[i].find(' ')) + ": exit " + std::to_string(rc) + "] ";
      }
      out[k] = slurp(f);
    }
    bool same = !out[0].empty() && out[0] == out[1];
    ok = ok && same;
    d += runs[i].substr(0, runs[i].find(' ')) + (same ? " identical" : " DIFFER") + " (" +
         std::to_string(out[0].size()) + " bytes); ";
  }
  fs::remove_all(dir);
  return {ok, d};
}

}  // namespace

int main(int argc, char** argv) {
  PrecisionScope scope(kBits);
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "functional equation", functional_equation},
      {2, "residues of y0", residues},
      {3, "Mittag-Leffler identity", mittag_leffler},
      {4, "formal series", formal_series_check},
      {5, "Borel cross-check", borel_cross_check},
      {6, "barrier growth law", growth_law_check},
      {7, "F2 smoothing", smoothing},
      {8, "acceleration identities", acceleration_identities},
      {9, "saddle asymptotics", saddle},
      {10, "least-term truncation", least_term},
      {11, "barrier crossing", barrier_crossing},
      {12, "Laplace roundtrip", roundtrip},
      {13, "determinism", [&cli] { return determinism(cli); }},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
