#pragma once

#include "lambert/vec2.hpp"

namespace lambert {

/// Endpoints of a Lambert problem relative to the attracting center, with the
/// requested elapsed time. All quantities use gravitational parameter 1.
class BoundaryProblem {
 public:
  /// Throws CoincidentPoints when A == B and InvalidProblem when an endpoint
  /// sits on the center or the time is negative or not finite.
  BoundaryProblem(Vec2 pos_a, Vec2 pos_b, double tof = 0.0);

  /// A on the positive x axis, B at counterclockwise angle `transfer_angle`.
  static BoundaryProblem from_triangle(double r_a, double r_b, double transfer_angle,
                                       double tof = 0.0);

  /// A on the positive x axis, B in the closed upper half-plane at the given
  /// chord length. Throws InvalidProblem if the triangle inequality fails.
  static BoundaryProblem from_sides(double r_a, double r_b, double chord, double tof = 0.0);

  Vec2 pos_a() const noexcept { return pos_a_; }
  Vec2 pos_b() const noexcept { return pos_b_; }
  double tof() const noexcept { return tof_; }
  double r_a() const noexcept { return r_a_; }
  double r_b() const noexcept { return r_b_; }
  double chord() const noexcept { return chord_; }

  /// Counterclockwise angle from A to B in (0, 2*pi); pi when the sign of the
  /// sweep is undecidable (O on the segment AB).
  double transfer_angle() const noexcept { return transfer_angle_; }

  /// Sign of A x B: +1 when the counterclockwise sweep from A to B is below pi.
  int cross_sign() const noexcept;

  /// True when A and B lie on one ray from O (only rectilinear arcs exist).
  bool same_ray() const noexcept;

  BoundaryProblem with_tof(double tof) const { return {pos_a_, pos_b_, tof}; }

 private:
  Vec2 pos_a_;
  Vec2 pos_b_;
  double tof_;
  double r_a_;
  double r_b_;
  double chord_;
  double transfer_angle_;
};

/// Flat-triangle image: 0 <= xb < xa, xa + xb = rA + rB, xa - xb = chord.
struct RectilinearEquivalent {
  double xa = 0.0;
  double xb = 0.0;

  /// O lies on the open segment AB.
  bool degenerate() const noexcept { return xb == 0.0; }
};

/// Isosceles image: common radius r and polar angle theta_a of the right end.
struct SymmetricEquivalent {
  double r = 0.0;
  double theta_a = 0.0;
};

/// Lancaster-Blanchard style variables attached to a rectilinear velocity.
struct LBVariables {
  double x = 0.0;
  double q_abs = 0.0;
  int q_sign = 1;
};

/// Relative width under which xb is snapped to exactly zero.
inline constexpr double kDegenerateTolerance = 1e-13;

RectilinearEquivalent reduce_to_rectilinear(const BoundaryProblem& p);
RectilinearEquivalent reduce_to_rectilinear(double r_a, double r_b, double chord);

/// Throws Degenerate when xb == 0.
SymmetricEquivalent reduce_to_symmetric(const RectilinearEquivalent& re);
RectilinearEquivalent rectilinear_of(const SymmetricEquivalent& se);

/// Proper rotation about O; `apply` maps world coordinates into the frame.
struct Rotation {
  Vec2 axis{1.0, 0.0};  // world direction of the frame's x axis

  Vec2 apply(Vec2 p) const noexcept { return {dot(p, axis), cross(axis, p)}; }
  Vec2 unapply(Vec2 p) const noexcept {
    return {p.x * axis.x - p.y * axis.y, p.x * axis.y + p.y * axis.x};
  }
};

/// Frame in which the chord is horizontal: a.y == b.y >= 0, and when both are
/// zero b.x < 0 < a.x for O between the ends.
struct ChordFrame {
  Rotation rotation;
  Vec2 a;
  Vec2 b;
};

/// Throws CoincidentPoints when a == b.
ChordFrame chord_frame(Vec2 pos_a, Vec2 pos_b);

/// Abscissa of the eccentricity vector shared by every conic through both
/// framed points: (rA - rB) / (xA - xB). Throws DomainError if the chord is
/// not horizontal.
double alpha(Vec2 framed_a, Vec2 framed_b);

/// The equivalent form (xA + xB) / (rA + rB), valid in the same frame.
double alpha_from_sum(Vec2 framed_a, Vec2 framed_b);

LBVariables lb_variables(double va, const RectilinearEquivalent& re, int vb_sign);

}  // namespace lambert
