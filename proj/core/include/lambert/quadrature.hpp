#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>

namespace lambert::quadrature {

struct Tolerance {
  double absolute = 1e-12;
  double relative = 1e-12;
  std::size_t max_subintervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t subintervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature over [a, b].
/// The interval with the largest error estimate is bisected until the total
/// estimate satisfies max(absolute, relative * |I|). Endpoints are never
/// evaluated, so integrable endpoint singularities are tolerated, though
/// convergence is slow unless the caller removes them by substitution.
/// Throws Error(QuadratureFailure) when the subinterval budget runs out.
Result integrate(const Integrand& f, double a, double b, const Tolerance& tol = {});

/// Same as integrate(), but splits at the given interior breakpoints first.
Result integrate(const Integrand& f, double a, double b,
                 std::initializer_list<double> breakpoints, const Tolerance& tol = {});

}  // namespace lambert::quadrature
