#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "barrierlab/acceleration.hpp"
#include "barrierlab/borel.hpp"
#include "barrierlab/dirichlet.hpp"
#include "barrierlab/hp/special.hpp"
#include "barrierlab/parallel.hpp"
#include "barrierlab/solutions.hpp"

namespace barrierlab::cli {

using namespace hp;

namespace {

int digits_for(int bits) { return static_cast<int>(std::ceil(bits * 0.301)); }

// Evaluates fn for every input in parallel. Each row either succeeds or
// carries its error in the last cell.
template <class In, class Fn>
std::vector<Row> eval_rows(const std::vector<In>& inputs, size_t ncols, unsigned workers, Fn fn) {
  return parallel_map(
      inputs,
      [&](const In& in) -> Row {
        try {
          Row r = fn(in);
          r.cells.resize(ncols);
          return r;
        } catch (const NumericError& e) {
          return error_row(ncols, e.what(), is_guard(e.code()) ? RowStatus::Guard : RowStatus::Failed);
        } catch (const std::exception& e) {
          return error_row(ncols, e.what(), RowStatus::Failed);
        }
      },
      workers);
}

std::vector<Complex> plane(const std::vector<Real>& re, const std::vector<Real>& im) {
  std::vector<Complex> out;
  for (const Real& a : re) {
    for (const Real& b : im) out.emplace_back(a, b);
  }
  return out;
}

BorelOptions borel_options(const RunConfig& cfg) {
  BorelOptions o;
  o.bits = cfg.precision_bits;
  o.rel_tol = cfg.rel_tol;
  return o;
}

DirichletSeriesSpec series_spec(const RunConfig& cfg) {
  if (!cfg.series_file.empty()) {
    std::ifstream in(cfg.series_file);
    if (!in) throw ConfigError("cannot read series file " + cfg.series_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return series_from_json(ss.str());
  }
  if (cfg.series == "F") return builtin_F();
  if (cfg.series == "F2") return builtin_F2(cfg.m);
  return builtin_theta();
}

// c from the config, calibrated when asked; the calibration goes to the
// manifest.
Complex resolve_c(const RunConfig& cfg, json& extra) {
  if (!wants_calibration(cfg)) return parse_complex(cfg.c, cfg.precision_bits);
  if (cfg.m < 2) throw ConfigError("calibrating c needs m >= 2");
  Calibration cal = calibrate_c(cfg.m, borel_options(cfg));
  const int d = digits_for(cfg.precision_bits);
  extra["calibration"] = {{"c_re", fmt(cal.c.re(), d)},
                          {"c_im", fmt(cal.c.im(), d)},
                          {"m", cfg.m},
                          {"eps0", fmt(cal.eps0, d)},
                          {"rule", "extrapolated"}};
  return cal.c;
}

RunResult cmd_eval(const RunConfig& cfg) {
  RunResult res;
  const int d = digits_for(cfg.precision_bits);
  std::function<Complex(const Complex&)> s;
  if (cfg.solution == "y0") {
    s = [](const Complex& x) { return y0(x); };
  } else if (cfg.solution == "y0_ml") {
    s = [](const Complex& x) { return y0_ml(x); };
  } else if (cfg.solution == "y1") {
    s = [](const Complex& x) { return y1(x); };
  } else {
    Complex c = resolve_c(cfg, res.extra);
    s = [c](const Complex& x) { return yc(x, c); };
  }
  Section sec{"eval", {"x_re", "x_im", "val_re", "val_im", "fe_residual", "error"}, {}};
  auto xs = plane(axis(cfg, "x_re"), axis(cfg, "x_im"));
  sec.rows = eval_rows(xs, sec.columns.size(), cfg.workers, [&](const Complex& x) {
    Complex v = s(x);
    Real fe = fe_residual(s, x);
    return Row{{fmt(x.re(), d), fmt(x.im(), d), fmt(v.re(), d), fmt(v.im(), d), fmt(fe, d)}};
  });
  // the x cells stay filled on failed rows
  for (size_t i = 0; i < xs.size(); ++i) {
    sec.rows[i].cells[0] = fmt(xs[i].re(), d);
    sec.rows[i].cells[1] = fmt(xs[i].im(), d);
  }
  res.sections.push_back(std::move(sec));
  res.plot = {"eval", "x_re", "val_re", "", "x_im", false, false};
  return res;
}

RunResult cmd_scan_barrier(const RunConfig& cfg) {
  RunResult res;
  const int d = digits_for(cfg.precision_bits);
  DirichletSeriesSpec spec = series_spec(cfg);
  auto re = axis(cfg, "p_re"), im = axis(cfg, "p_im");
  auto ps = plane(re, im);
  Section sec{"scan-barrier", {"p_re", "p_im", "log_abs", "arg", "k_star", "error"}, {}};
  sec.rows = eval_rows(ps, sec.columns.size(), cfg.workers, [&](const Complex& p) {
    try {
      SeriesValue v = eval_series_detail(spec, p);
      return Row{{fmt(p.re(), d), fmt(p.im(), d), fmt(v.value.log_abs(), d), fmt(v.value.arg(), d),
                  std::to_string(v.k_star)}};
    } catch (const NumericError& e) {
      if (e.code() != ErrorCode::BarrierProximity) throw;
      return Row{{fmt(p.re(), d), fmt(p.im(), d), "", "", "", "barrier"}, RowStatus::Guard};
    }
  });
  for (size_t i = 0; i < ps.size(); ++i) {
    sec.rows[i].cells[0] = fmt(ps[i].re(), d);
    sec.rows[i].cells[1] = fmt(ps[i].im(), d);
  }
  res.sections.push_back(std::move(sec));
  if (re.size() > 1 && im.size() > 1) {
    res.plot = {"scan-barrier", "p_re", "p_im", "log_abs", "", false, true};
  } else if (re.size() > 1) {
    res.plot = {"scan-barrier", "p_re", "log_abs", "", "p_im", false, false};
  } else {
    res.plot = {"scan-barrier", "p_im", "log_abs", "", "p_re", false, false};
  }
  return res;
}

RunResult cmd_borel(const RunConfig& cfg) {
  RunResult res;
  const int d = digits_for(cfg.precision_bits);
  BorelOptions opt = borel_options(cfg);
  auto ps = plane(axis(cfg, "p_re"), axis(cfg, "p_im"));
  Section sec{"borel",
              {"p_re", "p_im", "direct_re", "direct_im", "decomposed_re", "decomposed_im", "abs_diff", "err_direct",
               "err_decomposed", "error"},
              {}};
  sec.rows = eval_rows(ps, sec.columns.size(), cfg.workers, [&](const Complex& p) {
    Row r{{fmt(p.re(), d), fmt(p.im(), d), "", "", "", "", "", "", "", ""}};
    BorelValue b = Y_decomposed(p, opt);
    r.cells[4] = fmt(b.value.re(), d);
    r.cells[5] = fmt(b.value.im(), d);
    r.cells[8] = fmt(b.err_estimate, d);
    // the hairpin exists only for Re p < -0.1
    if (p.re() < -0.1) {
      BorelValue a = Y_direct(p, opt);
      r.cells[2] = fmt(a.value.re(), d);
      r.cells[3] = fmt(a.value.im(), d);
      r.cells[6] = fmt(abs(a.value - b.value), d);
      r.cells[7] = fmt(a.err_estimate, d);
    }
    return r;
  });
  for (size_t i = 0; i < ps.size(); ++i) {
    sec.rows[i].cells[0] = fmt(ps[i].re(), d);
    sec.rows[i].cells[1] = fmt(ps[i].im(), d);
  }
  res.sections.push_back(std::move(sec));
  res.plot = {"borel", "p_re", "abs_diff", "", "p_im", true, false};
  return res;
}

RunResult cmd_cross_barrier(const RunConfig& cfg) {
  RunResult res;
  const int d = digits_for(cfg.precision_bits);
  BorelOptions opt = borel_options(cfg);
  Complex c = resolve_c(cfg, res.extra);
  struct In {
    Real t, eps;
  };
  std::vector<In> in;
  for (const Real& t : axis(cfg, "t")) {
    for (const Real& e : axis(cfg, "eps")) in.push_back({t, e});
  }
  Section sec{"cross-barrier",
              {"t", "eps", "H_left_re", "H_left_im", "H_right_re", "H_right_im", "jump_re", "jump_im", "jump_abs",
               "err", "error"},
              {}};
  sec.rows = eval_rows(in, sec.columns.size(), cfg.workers, [&](const In& q) {
    BarrierJump j = barrier_jump(q.t, q.eps, c, cfg.m, opt);
    return Row{{fmt(q.t, d), fmt(q.eps, d), fmt(j.left.re(), d), fmt(j.left.im(), d), fmt(j.right.re(), d),
                fmt(j.right.im(), d), fmt(j.jump.re(), d), fmt(j.jump.im(), d), fmt(abs(j.jump), d),
                fmt(j.err_left + j.err_right, d)}};
  });
  for (size_t i = 0; i < in.size(); ++i) {
    sec.rows[i].cells[0] = fmt(in[i].t, d);
    sec.rows[i].cells[1] = fmt(in[i].eps, d);
  }
  res.sections.push_back(std::move(sec));
  res.plot = {"cross-barrier", "eps", "jump_abs", "", "t", true, false};
  return res;
}

RunResult cmd_appendix(const RunConfig& cfg) {
  RunResult res;
  const int bits = cfg.precision_bits;
  const int d = digits_for(bits);
  auto xs = axis(cfg, "x"), ts = axis(cfg, "t");

  Section median{"median", {"x", "median_rel", "difference_rel", "error"}, {}};
  median.rows = eval_rows(xs, median.columns.size(), cfg.workers, [&](const Real& xr) {
    Complex x(xr);
    Complex fp = f_plus(x), fm = f_minus(x);
    Complex want = mul_i(pi(bits) * 2.0 / euler_e(bits) * rgamma(x));
    return Row{{fmt(xr, d), fmt(rel_diff((fp + fm) / 2.0, y1(x)), d), fmt(rel_diff(fp - fm, want), d)}};
  });

  Section saddle{"saddle", {"t", "ratio_re", "ratio_im", "deviation", "deviation_negated", "error"}, {}};
  saddle.rows = eval_rows(ts, saddle.columns.size(), cfg.workers, [&](const Real& t) {
    SaddleCheck s = saddle_check(t);
    return Row{{fmt(t, d), fmt(s.ratio.re(), d), fmt(s.ratio.im(), d), fmt(s.deviation, d),
                fmt(s.deviation_negated, d)}};
  });

  Section trunc{"truncation",
                {"x", "N_star", "partial_sum_re", "partial_sum_im", "abs_error", "normalized_error", "least_term",
                 "error"},
                {}};
  trunc.rows = eval_rows(xs, trunc.columns.size(), cfg.workers, [&](const Real& xr) {
    TruncationReport r = least_term_truncation(Complex(xr), cfg.max_order);
    return Row{{fmt(xr, d), std::to_string(r.N_star), fmt(r.partial_sum.re(), d), fmt(r.partial_sum.im(), d),
                fmt(r.error, d), fmt(r.normalized_error, d), fmt(r.least_term, d)}};
  });

  for (size_t i = 0; i < xs.size(); ++i) {
    median.rows[i].cells[0] = fmt(xs[i], d);
    trunc.rows[i].cells[0] = fmt(xs[i], d);
  }
  for (size_t i = 0; i < ts.size(); ++i) saddle.rows[i].cells[0] = fmt(ts[i], d);
  res.sections = {std::move(median), std::move(saddle), std::move(trunc)};
  res.plot = {"truncation", "x", "normalized_error", "", "", true, false};
  return res;
}

RunResult cmd_zeros(const RunConfig& cfg) {
  RunResult res;
  const int d = digits_for(cfg.precision_bits);
  DirichletSeriesSpec spec = series_spec(cfg);
  auto re = axis(cfg, "p_re"), im = axis(cfg, "p_im");
  std::vector<Rectangle> rects;
  for (size_t i = 0; i + 1 < re.size(); ++i) {
    for (size_t j = 0; j + 1 < im.size(); ++j) rects.push_back({re[i], re[i + 1], im[j], im[j + 1]});
  }
  Section sec{"zeros", {"re_lo", "re_hi", "im_lo", "im_hi", "zeros", "error"}, {}};
  sec.rows = eval_rows(rects, sec.columns.size(), cfg.workers, [&](const Rectangle& r) {
    long n = count_zeros(spec, r);
    return Row{{fmt(r.re_lo, d), fmt(r.re_hi, d), fmt(r.im_lo, d), fmt(r.im_hi, d), std::to_string(n)}};
  });
  for (size_t i = 0; i < rects.size(); ++i) {
    sec.rows[i].cells[0] = fmt(rects[i].re_lo, d);
    sec.rows[i].cells[1] = fmt(rects[i].re_hi, d);
    sec.rows[i].cells[2] = fmt(rects[i].im_lo, d);
    sec.rows[i].cells[3] = fmt(rects[i].im_hi, d);
  }
  res.sections.push_back(std::move(sec));
  res.plot = {"zeros", "re_lo", "im_lo", "zeros", "", false, true};
  return res;
}

}  // namespace

RunResult run_command(const RunConfig& cfg) {
  PrecisionScope scope(cfg.precision_bits);
  if (cfg.command == "eval") return cmd_eval(cfg);
  if (cfg.command == "scan-barrier") return cmd_scan_barrier(cfg);
  if (cfg.command == "borel") return cmd_borel(cfg);
  if (cfg.command == "cross-barrier") return cmd_cross_barrier(cfg);
  if (cfg.command == "appendix") return cmd_appendix(cfg);
  if (cfg.command == "zeros") return cmd_zeros(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace barrierlab::cli
