#pragma once

#include "barrierlab/hp/complex.hpp"
#include "barrierlab/hp/special.hpp"

namespace barrierlab::hp {

struct InversionOptions {
  int max_iterations = 80;
  // |1 + ln x| below this switches off plain Newton.
  double critical_guard = 1e-3;
};

// ln x for the solution of x ln x = z on sheet `branch`. The sheet numbering
// follows Lambert W: x = exp(W_branch(z)). Branch 0 is cut along
// (-inf, -1/e], every other branch along (-inf, 0]; a point on the cut needs
// a side.
Complex critical_time_log(const Complex& z, long branch, Side side = Side::None,
                          const InversionOptions& opt = {});

// x with x ln x = z, ln x taken on the sheet of `branch`.
Complex invert_critical_time(const Complex& z, long branch, Side side = Side::None,
                             const InversionOptions& opt = {});

// z_m(x) = x ln x - x - (m + 1/2) ln x, written in w = ln x.
Complex zm_of_log(const Complex& w, int m);
Complex zm(const Complex& x, int m);
// dz_m/dw = w e^w - (m + 1/2)
Complex zm_prime_of_log(const Complex& w, int m);

// Real critical point x* of z_m, x* ln x* = m + 1/2, and its value z_m(x*).
Real zm_critical_point(int m, int bits);
Real zm_critical_value(int m, int bits);

// ln x for z_m(x) = z. Branch 0 is the sheet containing large positive x,
// cut along (-inf, z_m(x*)]; other branches follow the Lambert sheet of the
// leading x ln x behaviour.
Complex zm_log(const Complex& z, int m, long branch, Side side = Side::None,
               const InversionOptions& opt = {});
Complex invert_zm(const Complex& z, int m, long branch, Side side = Side::None,
                  const InversionOptions& opt = {});

}  // namespace barrierlab::hp
