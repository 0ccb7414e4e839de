#include "lambert/symmetric.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lambert/error.hpp"
#include "lambert/geometry.hpp"
#include "lambert/maps.hpp"
#include "lambert/quadrature.hpp"
#include "lambert/rectilinear.hpp"

namespace lambert::symmetric {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

void check_shape(const ArcQuery& q) {
  if (!std::isfinite(q.r) || !std::isfinite(q.theta_a) || !std::isfinite(q.eta))
    throw Error(ErrorCode::DomainError, "non-finite symmetric query");
  if (!(q.r > 0.0)) throw Error(ErrorCode::DomainError, "r must be positive");
  if (!(q.theta_a > 0.0) || !(q.theta_a < kHalfPi))
    throw Error(ErrorCode::DomainError, "theta_a must lie in (0, pi/2); pi/2 means A == B");
}

void check_direct(const ArcQuery& q) {
  check_shape(q);
  if (q.eta > 1.0 - kPoleMargin) {
    std::ostringstream msg;
    msg << "direct arcs need eta < 1, got " << q.eta;
    throw Error(ErrorCode::DomainError, msg.str());
  }
}

// 1 - eta sin(theta), accurate when both eta and sin(theta) approach 1.
double one_minus_eta_sin(double eta, double theta) {
  const double h = std::sin(0.5 * (kHalfPi - theta));
  return (1.0 - eta) + 2.0 * eta * h * h;
}

quadrature::Tolerance tolerance() {
  quadrature::Tolerance tol;
  tol.absolute = 0.0;
  tol.relative = rectilinear::kQuadratureTolerance;
  return tol;
}

}  // namespace

double tof_direct(const ArcQuery& q) {
  check_direct(q);
  const double p = std::sin(q.theta_a);
  const double scale = q.r * std::sqrt(q.r) * std::pow(1.0 - q.eta * p, 1.5);
  auto integrand = [&](double theta) {
    const double d = one_minus_eta_sin(q.eta, theta);
    return scale / (d * d);
  };
  return quadrature::integrate(integrand, q.theta_a, std::numbers::pi - q.theta_a, {kHalfPi},
                               tolerance())
      .value;
}

double tof_direct_deta(const ArcQuery& q) {
  check_direct(q);
  const double p = std::sin(q.theta_a);
  const double lead = q.r * std::sqrt(q.r) * std::sqrt(1.0 - q.eta * p);
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double d = one_minus_eta_sin(q.eta, theta);
    const double k = 0.5 * p * d + 2.0 * (s - p);
    return lead * k / (d * d * d);
  };
  return quadrature::integrate(integrand, q.theta_a, std::numbers::pi - q.theta_a, {kHalfPi},
                               tolerance())
      .value;
}

double tof_indirect(const ArcQuery& q) {
  check_shape(q);
  const double upper = 1.0 / std::sin(q.theta_a);
  if (!(q.eta > -1.0) || !(q.eta < upper)) {
    std::ostringstream msg;
    msg << "indirect arcs need eta in (-1, " << upper << "), got " << q.eta;
    throw Error(ErrorCode::DomainError, msg.str());
  }
  const auto re = rectilinear_of({q.r, q.theta_a});
  const double va = maps::va_from_eta_indirect(q.eta, re.xa, re.xb);
  return rectilinear::tof_indirect({re.xa, re.xb, va});
}

}  // namespace lambert::symmetric
