#pragma once

#include <functional>
#include <string>
#include <vector>

#include "barrierlab/hp/complex.hpp"

namespace barrierlab::hp {

using Integrand = std::function<Complex(const Complex&)>;
// Bound on |integral beyond radius R| along a ray.
using TailBound = std::function<Real(const Real& R)>;

struct Segment {
  enum class Kind { Line, Arc, Ray };
  Kind kind = Kind::Line;
  // Line: from a to b. Ray: from a along unit direction dir, cut at
  // distance truncation.
  Complex a, b, dir;
  Real truncation;
  TailBound tail_bound;
  // Arc: center + radius e^{i theta}, theta from theta0 to theta1.
  Complex center;
  Real radius, theta0, theta1;

  Complex start() const;
  Complex end() const;
};

class ContourPath {
 public:
  ContourPath& line(const Complex& a, const Complex& b);
  // Continues from the current end point.
  ContourPath& line_to(const Complex& b);
  ContourPath& arc(const Complex& center, const Real& radius, const Real& theta0, const Real& theta1);
  ContourPath& ray(const Complex& start, const Complex& direction, const Real& truncation,
                   TailBound tail_bound = nullptr);
  // A ray traversed inwards: from start + truncation * direction to start.
  ContourPath& ray_in(const Complex& start, const Complex& direction, const Real& truncation,
                      TailBound tail_bound = nullptr);

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  Complex start() const;
  Complex end() const;
  bool closed(const Real& tol) const;
  // Checks consecutive segments meet; throws InvalidArgument otherwise.
  void validate(const Real& tol) const;

  // Traversal sign applied to the whole integral.
  bool reversed = false;

 private:
  std::vector<Segment> segments_;
};

struct QuadOptions {
  double rel_tol = 1e-30;
  // Absolute floor for the error target, for values that vanish.
  double abs_tol = 0.0;
  int max_level = 11;
  long max_evals = 400000;
  bool throw_on_budget = false;
  bool check_tail = true;
};

struct QuadResult {
  Complex value;
  Real err_estimate;
  long n_evals = 0;
  bool converged = false;
};

QuadResult contour_quad(const ContourPath& path, const Integrand& f, const QuadOptions& opt = {});
QuadResult contour_quad(const ContourPath& path, const Integrand& f, double rel_tol);

// Tanh-sinh on [lo, hi] for a real parameter integrand returning Complex.
QuadResult quad_interval(const std::function<Complex(const Real&)>& f, const Real& lo, const Real& hi,
                         const QuadOptions& opt = {});

}  // namespace barrierlab::hp
