#include "barrierlab/hp/real.hpp"

#include <cmath>
#include <cstdlib>

namespace barrierlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorCode::PoleAtPositiveInteger: return "PoleAtPositiveInteger";
    case ErrorCode::OnBranchCut: return "OnBranchCut";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NearCriticalPoint: return "NearCriticalPoint";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::TailBoundViolated: return "TailBoundViolated";
    case ErrorCode::SlowConvergence: return "SlowConvergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BarrierProximity: return "BarrierProximity";
    case ErrorCode::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorCode::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorCode::RayDivergence: return "RayDivergence";
    case ErrorCode::BranchPointTooClose: return "BranchPointTooClose";
    case ErrorCode::NoInteriorMinimum: return "NoInteriorMinimum";
  }
  return "Unknown";
}

namespace hp {

namespace {
thread_local int tl_default_bits = kDefaultPrecision;
}

int default_precision() { return tl_default_bits; }

void set_default_precision(int bits) {
  if (bits < kMinPrecision) throw NumericError(ErrorCode::InvalidArgument, "precision below 64 bits");
  tl_default_bits = bits;
}

Real::Real(const std::string& s, int bits) {
  init(bits);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw NumericError(ErrorCode::ParseError, "not a number: " + s);
  }
}

std::string Real::str(int digits) const {
  if (digits <= 0) digits = static_cast<int>(std::ceil(bits() * 0.301));
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real pi(int bits) {
  Real r(bits, nullptr);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real euler_e(int bits) {
  Real r(1L, bits);
  mpfr_exp(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

Real ln2(int bits) {
  Real r(bits, nullptr);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

Real euler_gamma(int bits) {
  Real r(bits, nullptr);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

}  // namespace hp
}  // namespace barrierlab
