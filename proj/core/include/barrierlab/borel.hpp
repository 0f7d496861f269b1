#pragma once

#include <string>
#include <vector>

#include "barrierlab/dirichlet.hpp"
#include "barrierlab/hp/complex.hpp"

namespace barrierlab {

enum class BorelMethod { DirectHairpin, Decomposed, BromwichLeft, HairpinRight };

const char* to_string(BorelMethod m);

struct BorelValue {
  Complex p;
  Complex value;
  Real err_estimate;
  BorelMethod method = BorelMethod::Decomposed;
};

struct BorelOptions {
  // 0: use the precision of p.
  int bits = 0;
  double rel_tol = 1e-20;
  int max_level = 10;
  long max_evals = 400000;
  // Offset of the z-plane hairpin from the real axis.
  double delta = 0.25;
  double max_radius = 4000.0;
  // Largest Re w on the w-plane legs; e^w beyond this overflows Gamma.
  double max_leg = 13.0;
  // Added to both leg angles of the H_right hairpin; any shift that keeps
  // the legs in their valleys gives the same value.
  double leg_shift = 0.0;
  SeriesEvalOptions series;
};

// (1/2 pi i) of e^{pz} y0(x(z)) over the hairpin around [-1/e, inf), Re p < -0.1.
BorelValue Y_direct(const Complex& p, const BorelOptions& opt = {});

// pi - arg p clamped to [0.5, 2 pi - 0.5].
Real default_phi(const Complex& p);

// F(p) plus the integral over the rays of angle phi - 2 pi and phi in ln x.
BorelValue Y_decomposed(const Complex& p, const Real& phi, const BorelOptions& opt = {});
BorelValue Y_decomposed(const Complex& p, const BorelOptions& opt = {});

// Residues of e^{p z_m} y0 dz_m at x = k:
//   (ln k - (m + 1/2)/k) e^{p z_m(k)} / (e Gamma(k)).
DirichletSeriesSpec residue_F2(int m);

// The z_m analogue of Y_decomposed, Re p < 1.
BorelValue H_left(const Complex& p, int m, const BorelOptions& opt = {});
BorelValue H_left(const Complex& p, int m, const Real& phi, const BorelOptions& opt);

// Hairpin around the negative z_m axis for y_c, Re p > 1.
BorelValue H_right(const Complex& p, const Complex& c, int m, const BorelOptions& opt = {});
// The coefficient of c in H_right: the same hairpin for 1/Gamma(x).
BorelValue G_right(const Complex& p, int m, const BorelOptions& opt = {});

struct BarrierJump {
  Real t, eps;
  Complex left, right, jump;
  Real err_left, err_right;
};

BarrierJump barrier_jump(const Real& t, const Real& eps, const Complex& c, int m, const BorelOptions& opt = {});

enum class CalibrationRule {
  // c making H_left(1 - eps0) = H_right(1 + eps0, c).
  MatchAtEps0,
  // c matching the linear extrapolations 2H(1 -+ eps0) - H(1 -+ 2 eps0) of
  // both sides to the barrier.
  Extrapolated,
};

struct Calibration {
  Complex c;
  Real eps0;
  CalibrationRule rule = CalibrationRule::Extrapolated;
  // Left and right (c = 0) values and the c-coefficient used in the fit.
  Complex left, right0, g;
};

Calibration calibrate_c(int m, const BorelOptions& opt = {}, double eps0 = 0.05,
                        CalibrationRule rule = CalibrationRule::Extrapolated);

struct RoundtripOptions {
  double eta = 0.02;
  double P = 4.0;
  double rel_tol = 1e-7;
  int max_level = 7;
  BorelOptions borel;
};

struct Roundtrip {
  Complex x;
  Complex z;
  Complex value;
  Complex reference;
  Real rel_err;
  long h_evals = 0;
};

// The piecewise Laplace integral of H in z_m over (0, 1 - eta) and
// (1 + eta, P), compared against y_c(x). Samples of H are shared between
// the points.
std::vector<Roundtrip> laplace_roundtrip(const std::vector<Complex>& xs, const Complex& c, int m,
                                         const RoundtripOptions& opt = {});

}  // namespace barrierlab
