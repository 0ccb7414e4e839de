#include "lambert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <tuple>

#include "lambert/error.hpp"
#include "lambert/maps.hpp"
#include "lambert/rectilinear.hpp"
#include "roots.hpp"

namespace lambert::solver {
namespace {

using rectilinear::escape_velocity;

void check_inputs(const RectilinearEquivalent& re, double tof) {
  if (!(re.xa > 0.0) || !(re.xb >= 0.0) || !(re.xb < re.xa))
    throw Error(ErrorCode::InvalidProblem, "rectilinear image needs 0 <= xb < xa");
  if (!std::isfinite(tof) || !(tof > 0.0))
    throw Error(ErrorCode::InvalidProblem, "elapsed time must be positive and finite");
}

// Elapsed time and its va-derivative for n full periods plus a tail arc.
struct TimeFunction {
  RectilinearEquivalent re;
  int revs;
  Tail tail;

  double operator()(double va) const {
    const rectilinear::ArcQuery q{re.xa, re.xb, va};
    const double arc = tail == Tail::Direct ? rectilinear::tof_direct(q) : rectilinear::tof_indirect(q);
    return revs == 0 ? arc : revs * rectilinear::period(va, re.xa) + arc;
  }

  double derivative(double va) const {
    const rectilinear::ArcQuery q{re.xa, re.xb, va};
    const double arc = tail == Tail::Direct ? rectilinear::tof_direct_derivative(q)
                                            : rectilinear::tof_indirect_derivative(q);
    return revs == 0 ? arc : revs * rectilinear::period_derivative(va, re.xa) + arc;
  }

  double second_derivative(double va) const {
    const rectilinear::ArcQuery q{re.xa, re.xb, va};
    return revs * rectilinear::period_second_derivative(va, re.xa) +
           rectilinear::tof_direct_second_derivative(q);
  }
};

LambertSolution make_solution(const RectilinearEquivalent& re, ArcClass cls, double va,
                              double tof, double t_at_va, int iterations, bool certified) {
  LambertSolution s;
  s.arc_class = cls;
  s.va = va;
  s.eta = cls.direct_sweep() ? maps::eta_from_va_direct(va, re.xa, re.xb)
                             : maps::eta_from_va_indirect(va, re.xa, re.xb);
  s.beta_hat = s.eta;
  s.energy = maps::energy_rect(va, re.xa);
  s.tof = tof;
  s.tof_residual = std::abs(t_at_va - tof) / tof;
  s.certified = certified;
  s.iterations = iterations;
  s.multiplicity = re.degenerate() ? 2 : 1;
  return s;
}

detail::RootTolerance root_tolerance(double tof, double ve) {
  return {kResidualTarget * tof, kStepTarget * ve, kMaxIterations};
}

// Finds va in (-v_E, v_E) close enough to `side` * v_E that T(va) > tof.
double edge_above(const TimeFunction& t, double ve, double tof, double side, double start_gap) {
  for (double gap = start_gap;; gap *= 0.1) {
    const double g = std::max(gap, rectilinear::kEscapeMargin);
    const double va = side * ve * (1.0 - g);
    if (t(va) > tof) return va;
    if (g == rectilinear::kEscapeMargin) {
      std::ostringstream msg;
      msg << "elapsed time " << tof << " is not reached inside the escape margin";
      throw Error(ErrorCode::NoConvergence, msg.str());
    }
  }
}

LambertSolution finish(const RectilinearEquivalent& re, const TimeFunction& t, ArcClass cls,
                       const detail::RootResult& root, double tof, bool certified) {
  const double value = root.fx + tof;
  const double residual = std::abs(root.fx) / tof;
  if (!root.converged || residual > kAcceptResidual) {
    std::ostringstream msg;
    msg << "root finder stalled at va = " << root.x << " with relative residual " << residual
        << " after " << root.iterations << " iterations";
    throw Error(ErrorCode::NoConvergence, msg.str());
  }
  (void)t;
  return make_solution(re, cls, root.x, tof, value, root.iterations, certified);
}

double golden_minimum(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (std::abs(b - a) > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

LambertSolution solve_simple(const RectilinearEquivalent& re, double tof, Tail tail) {
  check_inputs(re, tof);
  if (tail == Tail::Direct && re.degenerate())
    throw Error(ErrorCode::DegenerateDirect,
                "O lies on the segment AB: both simple arcs are indirect");
  const double ve = escape_velocity(re.xa);
  const TimeFunction t{re, 0, tail};
  auto f = [&](double va) { return t(va) - tof; };
  auto df = [&](double va) { return t.derivative(va); };

  // T ~ span / |va| for large negative va.
  const double span = tail == Tail::Direct ? re.xa - re.xb : re.xa + re.xb;
  double lo = -2.0 * span / tof - ve;
  double f_lo = f(lo);
  for (int k = 0; f_lo >= 0.0; ++k) {
    if (k > 200) throw Error(ErrorCode::NoConvergence, "cannot bracket the root from below");
    lo *= 2.0;
    f_lo = f(lo);
  }
  const double hi = edge_above(t, ve, tof, 1.0, 0.5);

  const auto root = detail::safeguarded_newton(f, df, lo, hi, f_lo, hi, root_tolerance(tof, ve));
  const ArcClass cls = tail == Tail::Direct ? ArcClass::direct() : ArcClass::indirect();
  return finish(re, t, cls, root, tof, tail == Tail::Direct);
}

Minimum tmin_multirev(const RectilinearEquivalent& re, int revs, Tail tail) {
  check_inputs(re, 1.0);
  if (revs < 1) throw Error(ErrorCode::DomainError, "multi-revolution arcs need revs >= 1");
  const double ve = escape_velocity(re.xa);
  const TimeFunction t{re, revs, tail};

  if (tail == Tail::Indirect) {
    // No convexity certificate: global scan, then golden-section refinement.
    const int n = kDefaultSamples;
    const double h = 2.0 * ve / n;
    int best = 0;
    double best_t = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double va = -ve + (i + 0.5) * h;
      const double value = t(va);
      if (value < best_t) {
        best_t = value;
        best = i;
      }
    }
    const double a = -ve + std::max(best - 0.5, 0.25) * h;
    const double b = -ve + std::min(best + 1.5, n - 0.25) * h;
    Minimum m;
    m.va = golden_minimum(t, a, b, 1e-10 * ve);
    m.tof = std::min(t(m.va), best_t);
    m.certified = false;
    return m;
  }

  if (re.degenerate())
    throw Error(ErrorCode::DegenerateDirect, "direct tails need O off the segment AB");
  auto g = [&](double va) { return t.derivative(va); };
  auto dg = [&](double va) { return t.second_derivative(va); };
  double gap = 1e-2;
  double lo = -ve * (1.0 - gap);
  while (g(lo) >= 0.0 && gap > rectilinear::kEscapeMargin) {
    gap = std::max(gap * 0.1, rectilinear::kEscapeMargin);
    lo = -ve * (1.0 - gap);
  }
  gap = 1e-2;
  double hi = ve * (1.0 - gap);
  while (g(hi) <= 0.0 && gap > rectilinear::kEscapeMargin) {
    gap = std::max(gap * 0.1, rectilinear::kEscapeMargin);
    hi = ve * (1.0 - gap);
  }
  const double g_lo = g(lo);
  if (!(g_lo < 0.0) || !(g(hi) > 0.0))
    throw Error(ErrorCode::NoConvergence, "cannot bracket the time minimum");
  const double start = std::clamp(0.0, lo, hi);
  const auto root = detail::safeguarded_newton(g, dg, lo, hi, g_lo, start,
                                               {0.0, 1e-12 * ve, kMaxIterations});
  if (!root.converged) throw Error(ErrorCode::NoConvergence, "time minimum search stalled");
  Minimum m;
  m.va = root.x;
  m.tof = t(root.x);
  m.iterations = root.iterations;
  m.certified = true;
  return m;
}

std::vector<LambertSolution> solve_multirev(const RectilinearEquivalent& re, int revs,
                                            double tof, Tail tail) {
  if (tail == Tail::Indirect) return solve_multirev_indirect(re, revs, tof);
  check_inputs(re, tof);
  const Minimum m = tmin_multirev(re, revs, Tail::Direct);
  const ArcClass cls = ArcClass::multi_rev(revs, Tail::Direct);
  if (std::abs(tof - m.tof) <= kTieTolerance * tof)
    return {make_solution(re, cls, m.va, tof, m.tof, m.iterations, true)};
  if (tof < m.tof) return {};

  const double ve = escape_velocity(re.xa);
  const TimeFunction t{re, revs, Tail::Direct};
  auto f = [&](double va) { return t(va) - tof; };
  auto df = [&](double va) { return t.derivative(va); };
  const double f_min = m.tof - tof;

  // Each side is convex and monotone: Newton from the outer end (f > 0)
  // walks monotonically toward the root.
  const double lo = edge_above(t, ve, tof, -1.0, 1e-2);
  const double hi = edge_above(t, ve, tof, 1.0, 1e-2);
  const auto left = detail::safeguarded_newton(f, df, lo, m.va, f(lo), lo, root_tolerance(tof, ve));
  const auto right = detail::safeguarded_newton(f, df, m.va, hi, f_min, hi, root_tolerance(tof, ve));
  return {finish(re, t, cls, left, tof, true), finish(re, t, cls, right, tof, true)};
}

std::vector<LambertSolution> solve_multirev_indirect(const RectilinearEquivalent& re, int revs,
                                                     double tof, int samples) {
  check_inputs(re, tof);
  if (revs < 1) throw Error(ErrorCode::DomainError, "multi-revolution arcs need revs >= 1");
  if (samples < 8) throw Error(ErrorCode::DomainError, "need at least 8 samples");
  const double ve = escape_velocity(re.xa);
  const TimeFunction t{re, revs, Tail::Indirect};
  auto f = [&](double va) { return t(va) - tof; };
  auto df = [&](double va) { return t.derivative(va); };

  std::vector<double> grid;
  std::vector<double> values;
  grid.reserve(samples + 2);
  const double h = 2.0 * ve / samples;
  for (int i = 0; i < samples; ++i) grid.push_back(-ve + (i + 0.5) * h);
  for (double va : grid) values.push_back(f(va));

  // T -> +inf at both ends; close the sign pattern there if the outermost
  // samples are still below the target.
  const double end_gap = 0.5 / samples;
  if (values.front() <= 0.0) {
    const double va = edge_above(t, ve, tof, -1.0, end_gap);
    grid.insert(grid.begin(), va);
    values.insert(values.begin(), f(va));
  }
  if (values.back() <= 0.0) {
    double va = 0.0;
    try {
      va = edge_above(t, ve, tof, 1.0, end_gap);
    } catch (const Error&) {
      throw Error(ErrorCode::SamplingInconclusive, "target not exceeded before escape");
    }
    grid.push_back(va);
    values.push_back(f(va));
  }

  const double graze = 1e-9 * tof;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const bool local_min = values[i] <= values[i - 1] && values[i] <= values[i + 1];
    if (local_min && values[i] > 0.0 && values[i] < graze) {
      std::ostringstream msg;
      msg << "sampled minimum " << values[i] << " at va = " << grid[i]
          << " grazes the target; refine the grid";
      throw Error(ErrorCode::SamplingInconclusive, msg.str());
    }
  }

  std::vector<LambertSolution> out;
  const ArcClass cls = ArcClass::multi_rev(revs, Tail::Indirect);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const bool above = values[i] > 0.0;
    if (above == (values[i + 1] > 0.0)) continue;
    const double lo = grid[i];
    const double hi = grid[i + 1];
    const auto root = detail::safeguarded_newton(f, df, lo, hi, values[i], 0.5 * (lo + hi),
                                                 root_tolerance(tof, ve));
    out.push_back(finish(re, t, cls, root, tof, false));
  }
  return out;
}

int Census::total() const noexcept {
  int n = 0;
  for (const auto& r : rows) n += r.direct + r.indirect;
  return n;
}

Census count_solutions(const BoundaryProblem& p, double tof, int n_max) {
  return count_solutions(reduce_to_rectilinear(p), tof, n_max);
}

Census count_solutions(const RectilinearEquivalent& re, double tof, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::DomainError, "n_max must be non-negative");
  check_inputs(re, tof);

  auto row = [re, tof](int n) {
    CensusRow r;
    r.revs = n;
    r.direct_applicable = !re.degenerate();
    if (n == 0) {
      if (r.direct_applicable) r.direct = solve_simple(re, tof, Tail::Direct).multiplicity;
      r.indirect = solve_simple(re, tof, Tail::Indirect).multiplicity;
      return r;
    }
    if (r.direct_applicable) r.direct = static_cast<int>(solve_multirev(re, n, tof).size());
    r.indirect_certified = false;
    try {
      for (const auto& s : solve_multirev_indirect(re, n, tof)) r.indirect += s.multiplicity;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SamplingInconclusive) throw;
      r.indirect_inconclusive = true;
    }
    return r;
  };

  std::vector<std::future<CensusRow>> pending;
  for (int n = 0; n <= n_max; ++n) pending.push_back(std::async(std::launch::async, row, n));
  Census census;
  for (auto& f : pending) census.rows.push_back(f.get());
  return census;
}

std::vector<LambertSolution> solve_all(const RectilinearEquivalent& re, double tof, int n_max,
                                       bool include_indirect_multirev) {
  check_inputs(re, tof);
  std::vector<LambertSolution> out;
  if (!re.degenerate()) out.push_back(solve_simple(re, tof, Tail::Direct));
  out.push_back(solve_simple(re, tof, Tail::Indirect));
  for (int n = 1; n <= n_max; ++n) {
    if (!re.degenerate())
      for (auto& s : solve_multirev(re, n, tof)) out.push_back(s);
    if (include_indirect_multirev)
      for (auto& s : solve_multirev_indirect(re, n, tof)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const LambertSolution& a, const LambertSolution& b) {
    return std::tuple(a.arc_class.revs, a.arc_class.tail, a.va) <
           std::tuple(b.arc_class.revs, b.arc_class.tail, b.va);
  });
  return out;
}

}  // namespace lambert::solver
