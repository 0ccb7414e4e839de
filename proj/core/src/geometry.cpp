#include "lambert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lambert/error.hpp"

namespace lambert {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Angles within this of 0 or pi are treated as exactly collinear with O.
constexpr double kCollinearAngle = 64.0 * kEps;

bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

}  // namespace

BoundaryProblem::BoundaryProblem(Vec2 pos_a, Vec2 pos_b, double tof)
    : pos_a_(pos_a), pos_b_(pos_b), tof_(tof) {
  if (!finite(pos_a) || !finite(pos_b))
    throw Error(ErrorCode::InvalidProblem, "endpoint coordinates must be finite");
  if (!std::isfinite(tof) || tof < 0.0)
    throw Error(ErrorCode::InvalidProblem, "elapsed time must be finite and non-negative");
  r_a_ = norm(pos_a);
  r_b_ = norm(pos_b);
  if (r_a_ == 0.0 || r_b_ == 0.0)
    throw Error(ErrorCode::InvalidProblem, "an endpoint coincides with the center");
  chord_ = norm(pos_a - pos_b);
  if (chord_ == 0.0) throw Error(ErrorCode::CoincidentPoints, "A and B coincide");

  const double c = cross(pos_a, pos_b);
  const double d = dot(pos_a, pos_b);
  double angle = std::atan2(c, d);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  const double from_opposite = std::atan2(std::abs(c), -d);
  if (from_opposite <= kCollinearAngle) angle = std::numbers::pi;
  transfer_angle_ = angle;
}

BoundaryProblem BoundaryProblem::from_triangle(double r_a, double r_b, double transfer_angle,
                                               double tof) {
  if (!(r_a > 0.0) || !(r_b > 0.0))
    throw Error(ErrorCode::InvalidProblem, "radii must be positive");
  if (!(transfer_angle > 0.0) || !(transfer_angle < 2.0 * std::numbers::pi))
    throw Error(ErrorCode::InvalidProblem, "transfer angle must lie in (0, 2*pi)");
  Vec2 b{r_b * std::cos(transfer_angle), r_b * std::sin(transfer_angle)};
  if (transfer_angle == std::numbers::pi) b = {-r_b, 0.0};
  return {{r_a, 0.0}, b, tof};
}

BoundaryProblem BoundaryProblem::from_sides(double r_a, double r_b, double chord, double tof) {
  if (!(r_a > 0.0) || !(r_b > 0.0) || !(chord > 0.0))
    throw Error(ErrorCode::InvalidProblem, "radii and chord must be positive");
  const double slack = 4.0 * kEps * (r_a + r_b);
  if (chord > r_a + r_b + slack || chord < std::abs(r_a - r_b) - slack) {
    std::ostringstream msg;
    msg << "sides " << r_a << ", " << r_b << ", " << chord << " violate the triangle inequality";
    throw Error(ErrorCode::InvalidProblem, msg.str());
  }
  double cos_theta = (r_a * r_a + r_b * r_b - chord * chord) / (2.0 * r_a * r_b);
  cos_theta = std::clamp(cos_theta, -1.0, 1.0);
  if (cos_theta == -1.0) return {{r_a, 0.0}, {-r_b, 0.0}, tof};
  const double sin_theta = std::sqrt((1.0 - cos_theta) * (1.0 + cos_theta));
  return {{r_a, 0.0}, {r_b * cos_theta, r_b * sin_theta}, tof};
}

int BoundaryProblem::cross_sign() const noexcept {
  if (transfer_angle_ == std::numbers::pi) return 0;
  const double c = cross(pos_a_, pos_b_);
  return (c > 0.0) - (c < 0.0);
}

bool BoundaryProblem::same_ray() const noexcept {
  const double c = cross(pos_a_, pos_b_);
  const double d = dot(pos_a_, pos_b_);
  return d > 0.0 && std::atan2(std::abs(c), d) <= kCollinearAngle;
}

RectilinearEquivalent reduce_to_rectilinear(const BoundaryProblem& p) {
  const double sum = p.r_a() + p.r_b();
  RectilinearEquivalent re;
  re.xa = 0.5 * (sum + p.chord());
  if (p.transfer_angle() == std::numbers::pi) {
    re.xb = 0.0;
    return re;
  }
  if (p.same_ray()) {
    re.xa = std::max(p.r_a(), p.r_b());
    re.xb = std::min(p.r_a(), p.r_b());
    return re;
  }
  // xb = rA rB (1 + cos theta) / (2 xa), written through the angle from the
  // opposite ray so that nearly flat triangles keep full relative accuracy.
  const double phi = std::atan2(std::abs(cross(p.pos_a(), p.pos_b())), -dot(p.pos_a(), p.pos_b()));
  const double s = std::sin(0.5 * phi);
  re.xb = p.r_a() * p.r_b() * s * s / re.xa;
  return re;
}

RectilinearEquivalent reduce_to_rectilinear(double r_a, double r_b, double chord) {
  if (!(r_a > 0.0) || !(r_b > 0.0) || !(chord > 0.0))
    throw Error(ErrorCode::InvalidProblem, "radii and chord must be positive");
  RectilinearEquivalent re;
  re.xa = 0.5 * (r_a + r_b + chord);
  re.xb = std::max(0.0, 0.5 * (r_a + r_b - chord));
  if (re.xb <= 4.0 * kEps * re.xa) re.xb = 0.0;
  return re;
}

SymmetricEquivalent reduce_to_symmetric(const RectilinearEquivalent& re) {
  if (!(re.xb > 0.0))
    throw Error(ErrorCode::Degenerate, "xb = 0 has no isosceles image (theta_a -> 0)");
  if (!(re.xa > re.xb)) throw Error(ErrorCode::DomainError, "requires xb < xa");
  return {0.5 * (re.xa + re.xb), 2.0 * std::atan(std::sqrt(re.xb / re.xa))};
}

RectilinearEquivalent rectilinear_of(const SymmetricEquivalent& se) {
  const double c = std::cos(0.5 * se.theta_a);
  const double s = std::sin(0.5 * se.theta_a);
  return {2.0 * se.r * c * c, 2.0 * se.r * s * s};
}

ChordFrame chord_frame(Vec2 pos_a, Vec2 pos_b) {
  const Vec2 d = pos_a - pos_b;
  const double c = norm(d);
  if (c == 0.0) throw Error(ErrorCode::CoincidentPoints, "A and B coincide");
  ChordFrame f;
  f.rotation.axis = (1.0 / c) * d;
  double y = cross(pos_a, pos_b) / c;
  if (y < 0.0) {
    f.rotation.axis = -f.rotation.axis;
    y = -y;
  }
  f.a = {dot(pos_a, f.rotation.axis), y};
  f.b = {dot(pos_b, f.rotation.axis), y};
  return f;
}

double alpha(Vec2 framed_a, Vec2 framed_b) {
  const double ra = norm(framed_a);
  const double rb = norm(framed_b);
  if (std::abs(framed_a.y - framed_b.y) > 1e-12 * std::max(ra, rb))
    throw Error(ErrorCode::DomainError, "points are not in a chord frame");
  if (framed_a.x == framed_b.x) throw Error(ErrorCode::CoincidentPoints, "A and B coincide");
  return (ra - rb) / (framed_a.x - framed_b.x);
}

double alpha_from_sum(Vec2 framed_a, Vec2 framed_b) {
  return (framed_a.x + framed_b.x) / (norm(framed_a) + norm(framed_b));
}

LBVariables lb_variables(double va, const RectilinearEquivalent& re, int vb_sign) {
  if (!(re.xa > 0.0)) throw Error(ErrorCode::DomainError, "xa must be positive");
  if (vb_sign != 1 && vb_sign != -1) throw Error(ErrorCode::DomainError, "vb_sign must be +1 or -1");
  const double escape = std::sqrt(2.0 / re.xa);
  return {va / escape, std::sqrt(re.xb / re.xa), vb_sign};
}

}  // namespace lambert
