#pragma once

#include <cmath>
#include <functional>

namespace lambert::detail {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
  bool newton_only = true;  // no bisection fallback was needed
};

struct RootTolerance {
  double f_abs = 0.0;  // stop when |f| <= f_abs
  double x_abs = 0.0;  // or when the step is <= x_abs
  int max_iterations = 100;
};

/// Newton's method kept inside a sign-change bracket [lo, hi]; any step that
/// leaves the bracket is replaced by bisection. f_lo and f_hi must have
/// opposite signs; iteration starts from `start`.
inline RootResult safeguarded_newton(const std::function<double(double)>& f,
                                     const std::function<double(double)>& df, double lo,
                                     double hi, double f_lo, double start,
                                     const RootTolerance& tol) {
  RootResult out;
  const double lo_sign = f_lo < 0.0 ? -1.0 : 1.0;
  double x = start;
  for (int it = 1; it <= tol.max_iterations; ++it) {
    out.iterations = it;
    const double fx = f(x);
    out.x = x;
    out.fx = fx;
    if (std::abs(fx) <= tol.f_abs) {
      out.converged = true;
      return out;
    }
    if (fx * lo_sign > 0.0)
      lo = x;
    else
      hi = x;
    const double slope = df(x);
    double next = x - fx / slope;
    const bool inside = std::isfinite(next) && (next - lo) * (next - hi) < 0.0;
    if (!inside) {
      next = 0.5 * (lo + hi);
      out.newton_only = false;
    }
    const double step = std::abs(next - x);
    x = next;
    if (step <= tol.x_abs) {
      const double fn = f(x);
      if (std::abs(fn) <= std::abs(fx)) {
        out.x = x;
        out.fx = fn;
      }
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace lambert::detail
