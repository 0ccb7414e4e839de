#include "lambert/rectilinear.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lambert/error.hpp"
#include "lambert/quadrature.hpp"

namespace lambert::rectilinear {
namespace {

constexpr double kPi = std::numbers::pi;

quadrature::Tolerance tolerance() {
  quadrature::Tolerance tol;
  tol.absolute = 0.0;
  tol.relative = kQuadratureTolerance;
  return tol;
}

void check_query(const ArcQuery& q, bool allow_center) {
  if (!std::isfinite(q.xa) || !std::isfinite(q.xb) || !std::isfinite(q.va))
    throw Error(ErrorCode::DomainError, "non-finite rectilinear query");
  if (!(q.xa > 0.0)) throw Error(ErrorCode::DomainError, "xa must be positive");
  if (allow_center ? !(q.xb >= 0.0) : !(q.xb > 0.0))
    throw Error(ErrorCode::DomainError, allow_center ? "xb must be non-negative"
                                                     : "direct arcs need xb > 0");
  if (!(q.xb < q.xa)) throw Error(ErrorCode::DomainError, "requires xb < xa");
  const double ve = escape_velocity(q.xa);
  if (q.va > ve * (1.0 - kEscapeMargin)) {
    std::ostringstream msg;
    msg << "va = " << q.va << " is within the escape margin of v_E = " << ve;
    throw Error(ErrorCode::TooCloseToEscape, msg.str());
  }
}

// va^2 + 2/xb - 2/xa, the squared speed at xb.
double speed_sq_at_b(const ArcQuery& q) {
  return q.va * q.va + 2.0 * (q.xa - q.xb) / (q.xa * q.xb);
}

// u_B = v_B - v_A < 0 without cancellation.
double velocity_change(const ArcQuery& q) {
  const double k = 2.0 * (q.xa - q.xb) / (q.xa * q.xb);
  const double root = std::sqrt(q.va * q.va + k);
  if (q.va <= 0.0) return -k / (root - q.va);
  return -root - q.va;
}

// Radius as a function of u = v - va; 1/x = (v^2 - 2H)/2.
double radius(double u, double va, double minus_2h) {
  const double v = va + u;
  return 2.0 / (v * v + minus_2h);
}

// Integral of x(v)^power over v in (-inf, v_end] on a fixed-energy orbit.
double inbound_moment(double v_end, double minus_2h, double scale, int power) {
  auto integrand = [&](double t) {
    const double s = 1.0 - t;
    const double v = v_end - scale * t / s;
    const double x = 2.0 / (v * v + minus_2h);
    return std::pow(x, power) * scale / (s * s);
  };
  return quadrature::integrate(integrand, 0.0, 1.0, tolerance()).value;
}

// d/dv of the inbound fall time ending at radius x_end with velocity v_end <= 0,
// holding x_end fixed (the energy moves with v_end).
double inbound_time_derivative(double x_end, double v_end, double minus_2h, double scale) {
  return x_end * x_end + 2.0 * v_end * inbound_moment(v_end, minus_2h, scale, 3);
}

}  // namespace

double escape_velocity(double xa) {
  if (!(xa > 0.0)) throw Error(ErrorCode::DomainError, "xa must be positive");
  return std::sqrt(2.0 / xa);
}

double minus_twice_energy(double va, double xa) {
  const double ve = escape_velocity(xa);
  return (ve - va) * (ve + va);
}

double x_of_u(double u, const ArcQuery& q) {
  if (u > 0.0) throw Error(ErrorCode::DomainError, "u must be non-positive");
  const double v = q.va + u;
  const double inv = 0.5 * (v * v + minus_twice_energy(q.va, q.xa));
  if (!(inv > 0.0)) throw Error(ErrorCode::DomainError, "radius is unbounded (past escape)");
  return 1.0 / inv;
}

double arrival_velocity(const ArcQuery& q) {
  check_query(q, false);
  return -std::sqrt(speed_sq_at_b(q));
}

double tof_direct(const ArcQuery& q) {
  check_query(q, false);
  const double w = minus_twice_energy(q.va, q.xa);
  const double ub = velocity_change(q);
  auto integrand = [&](double u) {
    const double x = radius(u, q.va, w);
    return x * x;
  };
  // The radius peaks at culmination (v = 0), reached when va > 0.
  if (q.va > 0.0) return quadrature::integrate(integrand, ub, 0.0, {-q.va}, tolerance()).value;
  return quadrature::integrate(integrand, ub, 0.0, tolerance()).value;
}

double tof_direct_derivative(const ArcQuery& q) {
  check_query(q, false);
  const double w = minus_twice_energy(q.va, q.xa);
  const double ub = velocity_change(q);
  const double vb = q.va + ub;
  auto integrand = [&](double u) {
    const double x = radius(u, q.va, w);
    return -x * x * x * u;
  };
  const auto integral = q.va > 0.0
                            ? quadrature::integrate(integrand, ub, 0.0, {-q.va}, tolerance())
                            : quadrature::integrate(integrand, ub, 0.0, tolerance());
  return q.xb * q.xb * ub / vb + 2.0 * integral.value;
}

double tof_direct_second_derivative(const ArcQuery& q) {
  check_query(q, false);
  const double w = minus_twice_energy(q.va, q.xa);
  const double ub = velocity_change(q);
  const double vb = q.va + ub;
  const double k = 2.0 * (q.xa - q.xb) / (q.xa * q.xb);
  auto integrand = [&](double u) {
    const double x = radius(u, q.va, w);
    const double x2 = x * x;
    return x2 * x2 * u * u;
  };
  const auto integral = q.va > 0.0
                            ? quadrature::integrate(integrand, ub, 0.0, {-q.va}, tolerance())
                            : quadrature::integrate(integrand, ub, 0.0, tolerance());
  const double xb2 = q.xb * q.xb;
  return -xb2 * k / (vb * vb * vb) - 2.0 * xb2 * q.xb * ub * ub / vb + 6.0 * integral.value;
}

double period(double va, double xa) {
  const double w = minus_twice_energy(va, xa);
  if (!(w > 0.0)) throw Error(ErrorCode::NonElliptic, "period requires negative energy");
  return 2.0 * kPi / (w * std::sqrt(w));
}

double period_derivative(double va, double xa) {
  const double w = minus_twice_energy(va, xa);
  if (!(w > 0.0)) throw Error(ErrorCode::NonElliptic, "period requires negative energy");
  return 6.0 * kPi * va / (w * w * std::sqrt(w));
}

double period_second_derivative(double va, double xa) {
  const double w = minus_twice_energy(va, xa);
  if (!(w > 0.0)) throw Error(ErrorCode::NonElliptic, "period requires negative energy");
  const double w52 = w * w * std::sqrt(w);
  return 6.0 * kPi / w52 + 30.0 * kPi * va * va / (w52 * w);
}

double fall_time(double x, double v) {
  if (x == 0.0) return 0.0;
  if (!(x > 0.0) || v > 0.0) throw Error(ErrorCode::DomainError, "fall_time needs x >= 0, v <= 0");
  const double v2 = v * v;
  const double coeff = 2.0 * x * std::sqrt(x);
  // 2 - (-2H) x sin^2 s == 2 cos^2 s + x v^2 sin^2 s along the fall.
  auto integrand = [&](double s) {
    const double sn = std::sin(s);
    const double cs = std::cos(s);
    return coeff * sn * sn * cs / std::sqrt(2.0 * cs * cs + x * v2 * sn * sn);
  };
  return quadrature::integrate(integrand, 0.0, 0.5 * kPi, tolerance()).value;
}

double tof_indirect(const ArcQuery& q) {
  check_query(q, true);
  if (q.va < 0.0) {
    double t = fall_time(q.xa, q.va);
    if (q.xb > 0.0) t += fall_time(q.xb, -std::sqrt(speed_sq_at_b(q)));
    return t;
  }
  // Culminating: the full period minus the reversed direct arc.
  const double tp = period(q.va, q.xa);
  if (q.xb > 0.0) return tp - tof_direct({q.xa, q.xb, -q.va});
  return tp - fall_time(q.xa, -q.va);
}

double tof_indirect_derivative(const ArcQuery& q) {
  check_query(q, true);
  const double w = minus_twice_energy(q.va, q.xa);
  const double scale = escape_velocity(q.xa);
  if (q.va < 0.0) {
    double d = q.xa * q.xa;
    double moment = inbound_moment(q.va, w, scale, 3);
    if (q.xb > 0.0) {
      const double vb = std::sqrt(speed_sq_at_b(q));
      d -= q.xb * q.xb * q.va / vb;
      // By v -> -v the outbound integral over [vb, inf) is an inbound one.
      moment += inbound_moment(-vb, w, scale, 3);
    }
    return d + 2.0 * q.va * moment;
  }
  const double dp = period_derivative(q.va, q.xa);
  if (q.xb > 0.0) return dp + tof_direct_derivative({q.xa, q.xb, -q.va});
  return dp + inbound_time_derivative(q.xa, -q.va, w, scale);
}

}  // namespace lambert::rectilinear
