#include "barrierlab/hp/contour.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <mutex>

namespace barrierlab::hp {

Complex Segment::start() const {
  switch (kind) {
    case Kind::Line: return a;
    case Kind::Ray: return a;
    case Kind::Arc: return center + polar(radius, theta0);
  }
  return a;
}

Complex Segment::end() const {
  switch (kind) {
    case Kind::Line: return b;
    case Kind::Ray: return a + dir * truncation;
    case Kind::Arc: return center + polar(radius, theta1);
  }
  return b;
}

ContourPath& ContourPath::line(const Complex& a, const Complex& b) {
  Segment s;
  s.kind = Segment::Kind::Line;
  s.a = a;
  s.b = b;
  segments_.push_back(std::move(s));
  return *this;
}

ContourPath& ContourPath::line_to(const Complex& b) {
  if (segments_.empty()) throw NumericError(ErrorCode::InvalidArgument, "line_to on an empty path");
  return line(end(), b);
}

ContourPath& ContourPath::arc(const Complex& center, const Real& radius, const Real& theta0, const Real& theta1) {
  Segment s;
  s.kind = Segment::Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta1;
  segments_.push_back(std::move(s));
  return *this;
}

ContourPath& ContourPath::ray(const Complex& start, const Complex& direction, const Real& truncation,
                              TailBound tail_bound) {
  Segment s;
  s.kind = Segment::Kind::Ray;
  s.a = start;
  s.dir = direction / abs(direction);
  s.truncation = truncation;
  s.tail_bound = std::move(tail_bound);
  segments_.push_back(std::move(s));
  return *this;
}

ContourPath& ContourPath::ray_in(const Complex& start, const Complex& direction, const Real& truncation,
                                 TailBound tail_bound) {
  Segment s;
  s.kind = Segment::Kind::Ray;
  Complex d = direction / abs(direction);
  s.a = start + d * truncation;
  s.dir = -d;
  s.truncation = truncation;
  s.tail_bound = std::move(tail_bound);
  segments_.push_back(std::move(s));
  return *this;
}

Complex ContourPath::start() const {
  if (segments_.empty()) throw NumericError(ErrorCode::InvalidArgument, "empty path");
  return segments_.front().start();
}

Complex ContourPath::end() const {
  if (segments_.empty()) throw NumericError(ErrorCode::InvalidArgument, "empty path");
  return segments_.back().end();
}

bool ContourPath::closed(const Real& tol) const { return abs(end() - start()) <= tol; }

void ContourPath::validate(const Real& tol) const {
  for (size_t i = 1; i < segments_.size(); ++i) {
    if (abs(segments_[i].start() - segments_[i - 1].end()) > tol) {
      throw NumericError(ErrorCode::InvalidArgument, "contour segments " + std::to_string(i - 1) + " and " +
                                                         std::to_string(i) + " are not connected");
    }
  }
}

namespace {

// Tanh-sinh nodes for t >= 0: complement c = 1 - tanh(pi/2 sinh t) and
// weight w = (pi/2) cosh t / cosh^2(pi/2 sinh t).
struct Node {
  Real c, w;
};

struct Table {
  std::deque<std::unique_ptr<const std::vector<Node>>> levels;
};

std::mutex g_mutex;
std::map<int, Table> g_tables;

Node make_node(const Real& t, int bits) {
  Real half_pi = pi(bits) / 2.0;
  Real u = half_pi * sinh(t);
  Real eu = exp(u);
  Real ch = cosh(u);
  Node n;
  n.c = Real(1L, bits) / (eu * ch);
  n.w = half_pi * cosh(t) / (ch * ch);
  return n;
}

const std::vector<Node>& level_nodes(int bits, int level) {
  std::lock_guard<std::mutex> lock(g_mutex);
  Table& tab = g_tables[bits];
  const Real cutoff = ldexp(Real(1L, bits), -(bits + 40));
  while (static_cast<int>(tab.levels.size()) <= level) {
    const int l = static_cast<int>(tab.levels.size());
    auto nodes = std::make_unique<std::vector<Node>>();
    Real h = ldexp(Real(1L, bits), -l);
    for (long k = (l == 0 ? 0 : 1);; k += (l == 0 ? 1 : 2)) {
      Real t = h * Real(k, bits);
      Node n = make_node(t, bits);
      if (n.w < cutoff && k > 0) break;
      nodes->push_back(std::move(n));
    }
    tab.levels.push_back(std::move(nodes));
  }
  return *tab.levels[level];
}

struct Param {
  Complex z, dz;
};

// Point and derivative at parameter s in (0,1) given either s itself (left
// half, c = 2s) or 1 - s (right half).
Param eval_segment(const Segment& seg, const Real& c, bool right) {
  Real half_c = c / 2.0;
  switch (seg.kind) {
    case Segment::Kind::Line:
    case Segment::Kind::Ray: {
      Complex a = seg.a;
      Complex b = seg.kind == Segment::Kind::Line ? seg.b : seg.a + seg.dir * seg.truncation;
      Complex d = b - a;
      Complex z = right ? b - d * half_c : a + d * half_c;
      return {z, d};
    }
    case Segment::Kind::Arc: {
      Real span = seg.theta1 - seg.theta0;
      Real th = right ? seg.theta1 - span * half_c : seg.theta0 + span * half_c;
      Complex e = polar(seg.radius, th);
      return {seg.center + e, mul_i(e) * span};
    }
  }
  return {};
}

struct SegmentState {
  Complex sum;
  Complex value;
  Real err;
  int level = -1;
};

void refine(const Segment& seg, const Integrand& f, SegmentState& st, int bits, long& evals) {
  const int l = st.level + 1;
  const auto& nodes = level_nodes(bits, l);
  Complex acc(Real(0L, bits), Real(0L, bits));
  for (size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (l == 0 && i == 0) {
      // t = 0: the midpoint, counted once.
      Param p = eval_segment(seg, Real(1L, bits), false);
      acc += f(p.z) * p.dz * n.w;
      ++evals;
      continue;
    }
    Param pr = eval_segment(seg, n.c, true);
    Param pl = eval_segment(seg, n.c, false);
    acc += (f(pr.z) * pr.dz + f(pl.z) * pl.dz) * n.w;
    evals += 2;
  }
  // Integral over s in [0,1] = (1/2) * integral over x in [-1,1].
  Real h = ldexp(Real(1L, bits), -l);
  Complex prev = st.value;
  if (l == 0) {
    st.sum = acc;
  } else {
    st.sum = st.sum + acc;
  }
  // sum accumulates sum_{nodes at level l} w f; value = h/2 * sum.
  st.value = st.sum * h / 2.0;
  st.err = l == 0 ? abs(st.value) + 1.0 : abs(st.value - prev);
  st.level = l;
}

}  // namespace

QuadResult contour_quad(const ContourPath& path, const Integrand& f, const QuadOptions& opt) {
  if (path.empty()) throw NumericError(ErrorCode::InvalidArgument, "empty contour");
  const auto& segs = path.segments();
  const int bits = segs.front().start().bits();
  std::vector<SegmentState> st(segs.size());
  QuadResult res;
  long evals = 0;
  for (size_t i = 0; i < segs.size(); ++i) {
    for (int l = 0; l <= 2; ++l) refine(segs[i], f, st[i], bits, evals);
  }
  const Real rel(opt.rel_tol, bits);
  const Real floor_(opt.abs_tol, bits);
  Real per = Real(static_cast<long>(segs.size()), bits);
  bool ok = false;
  Complex total;
  while (true) {
    total = Complex(Real(0L, bits), Real(0L, bits));
    for (const auto& s : st) total += s.value;
    Real target = max(rel * abs(total), floor_) / per;
    ok = true;
    bool progressed = false;
    for (size_t i = 0; i < segs.size(); ++i) {
      if (st[i].err > target) {
        ok = false;
        if (st[i].level < opt.max_level && evals < opt.max_evals) {
          refine(segs[i], f, st[i], bits, evals);
          progressed = true;
        }
      }
    }
    if (ok || !progressed) break;
  }
  Real err(0L, bits);
  for (const auto& s : st) err += s.err;
  Real tail(0L, bits);
  for (const auto& s : segs) {
    if (s.kind == Segment::Kind::Ray && s.tail_bound) tail += abs(s.tail_bound(s.truncation));
  }
  Real target = max(rel * abs(total), floor_);
  if (opt.check_tail && tail > target) {
    throw NumericError(ErrorCode::TailBoundViolated, "tail bound " + tail.str(6) + " exceeds target " +
                                                         target.str(6));
  }
  err += tail;
  res.value = path.reversed ? -total : total;
  res.err_estimate = err;
  res.n_evals = evals;
  res.converged = ok;
  if (!ok && opt.throw_on_budget) {
    throw NumericError(ErrorCode::BudgetExhausted, "quadrature estimate " + err.str(6) + " above target");
  }
  return res;
}

QuadResult contour_quad(const ContourPath& path, const Integrand& f, double rel_tol) {
  QuadOptions opt;
  opt.rel_tol = rel_tol;
  return contour_quad(path, f, opt);
}

QuadResult quad_interval(const std::function<Complex(const Real&)>& f, const Real& lo, const Real& hi,
                         const QuadOptions& opt) {
  ContourPath path;
  path.line(Complex(lo), Complex(hi));
  return contour_quad(path, [&](const Complex& z) { return f(z.re()); }, opt);
}

}  // namespace barrierlab::hp
