#pragma once

#include <complex>

#include "barrierlab/hp/complex.hpp"

namespace barrierlab::hp {

Real gamma(const Real& x);
// log|Gamma(x)|
Real lngamma(const Real& x);
Real rgamma(const Real& x);

Complex gamma(const Complex& z);
// Principal branch, continuous off the negative real axis.
Complex lngamma(const Complex& z);
// 1/Gamma, entire.
Complex rgamma(const Complex& z);

// 1/Gamma(k) and ln Gamma(k) for positive integers, cached per precision.
const Real& rgamma_int(long k, int bits);
const Real& lngamma_int(long k, int bits);

// B_{2k} / (2k (2k-1)), k = 1..count, cached per precision.
const Real& stirling_coefficient(int k, int bits);

enum class Side { None, Upper, Lower };

// Branch k of Lambert W. On a branch cut the side selects the limit taken;
// with Side::None a point on the real axis is read as the upper limit.
Complex lambert_w(const Complex& z, long k, Side side = Side::None);

// Double precision branch k of Lambert W, honouring signed zeros.
std::complex<double> lambert_w_double(std::complex<double> z, long k);

}  // namespace barrierlab::hp
