#include "lambert/reconstruct.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lambert/error.hpp"
#include "lambert/maps.hpp"

namespace lambert::reconstruct {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Velocity at the framed point on a conic, from (alpha, beta) = (x/r - C ydot, y/r + C xdot).
Vec2 velocity_on(const ConicBranch& k, Vec2 at, int orientation) {
  const double r = norm(at);
  const double c = orientation * std::sqrt(k.gamma);
  return {(k.beta - at.y / r) / c, (at.x / r - k.alpha) / c};
}

double probe(const kepler::State& s, const BoundaryProblem& p, double tof) {
  const kepler::State end = kepler::propagate(s, tof);
  return norm(end.pos - p.pos_b()) / p.r_a();
}

Arc planar_arc(const BoundaryProblem& p, const ChordFrame& frame, double beta_hat,
               int orientation, double tof) {
  Arc arc;
  const double a = alpha(frame.a, frame.b);
  arc.conic = conic_through(frame, beta_hat * std::sqrt((1.0 - a) * (1.0 + a)));
  arc.orientation = orientation;
  arc.beta_hat = beta_hat;
  arc.state.pos = p.pos_a();
  arc.state.vel = frame.rotation.unapply(velocity_on(arc.conic, frame.a, orientation));
  arc.probe_error = probe(arc.state, p, tof);
  arc.probed = true;
  return arc;
}

// Same-ray problems: motion stays on the ray, the conic collapses.
Arc radial_arc(const BoundaryProblem& p, const LambertSolution& sol) {
  Arc arc;
  const Vec2 dir = (1.0 / p.r_a()) * p.pos_a();
  const double xa = std::max(p.r_a(), p.r_b());
  const double xb = std::min(p.r_a(), p.r_b());
  double speed = sol.va;
  if (p.r_a() < p.r_b()) {
    // A is the inner end of the image arc: run it backwards.
    const double vb = std::sqrt(sol.va * sol.va + 2.0 / xb - 2.0 / xa);
    speed = sol.arc_class.direct_sweep() ? vb : -vb;
  }
  arc.state = {p.pos_a(), speed * dir};
  arc.beta_hat = sol.beta_hat;
  // Indirect rectilinear arcs pass through the collision, which the
  // propagator does not continue.
  if (sol.arc_class.direct_sweep()) {
    arc.probe_error = probe(arc.state, p, sol.tof);
    arc.probed = true;
  }
  return arc;
}

void check_probe(const Arc& arc) {
  if (arc.probed && !(arc.probe_error <= kProbeTolerance)) {
    std::ostringstream msg;
    msg << "reconstructed state misses B by " << arc.probe_error << " (relative to rA)";
    throw Error(ErrorCode::InconsistentSolution, msg.str());
  }
}

}  // namespace

ConicBranch conic_through(const ChordFrame& frame, double beta) {
  ConicBranch k;
  k.alpha = alpha(frame.a, frame.b);
  k.beta = beta;
  const double sum_r = norm(frame.a) + norm(frame.b);
  k.gamma = 0.5 * ((1.0 - k.alpha) * (1.0 + k.alpha) * sum_r - 2.0 * beta * frame.a.y);
  if (!(k.gamma > 0.0)) {
    std::ostringstream msg;
    msg << "beta = " << beta << " gives semi-latus rectum " << k.gamma;
    throw Error(ErrorCode::NonpositiveLatus, msg.str());
  }
  return k;
}

ConicBranch conic_through(const BoundaryProblem& p, double beta) {
  return conic_through(chord_frame(p.pos_a(), p.pos_b()), beta);
}

ArcClass classify_arc(const ConicBranch& conic, Vec2 framed_a, Vec2 framed_b, int orientation) {
  (void)conic;
  double ccw = std::atan2(cross(framed_a, framed_b), dot(framed_a, framed_b));
  if (ccw < 0.0) ccw += kTwoPi;
  const double sweep = orientation > 0 ? ccw : kTwoPi - ccw;
  return sweep < std::numbers::pi ? ArcClass::direct() : ArcClass::indirect();
}

std::vector<Arc> reconstruct(const BoundaryProblem& p, const LambertSolution& sol) {
  if (!(sol.tof > 0.0)) throw Error(ErrorCode::InvalidProblem, "solution has no elapsed time");
  std::vector<Arc> arcs;
  if (p.same_ray()) {
    arcs.push_back(radial_arc(p, sol));
  } else {
    const ChordFrame frame = chord_frame(p.pos_a(), p.pos_b());
    const int sign = p.cross_sign();
    if (sign == 0) {
      // O on the segment AB: the two indirect arcs are mirror images
      // across the line AB.
      arcs.push_back(planar_arc(p, frame, sol.beta_hat, -1, sol.tof));
      arcs.push_back(planar_arc(p, frame, -sol.beta_hat, 1, sol.tof));
    } else {
      const int orientation = sol.arc_class.direct_sweep() ? sign : -sign;
      arcs.push_back(planar_arc(p, frame, sol.beta_hat, orientation, sol.tof));
    }
  }
  for (const auto& a : arcs) check_probe(a);
  return arcs;
}

kepler::State initial_state(const BoundaryProblem& p, const LambertSolution& sol) {
  return reconstruct(p, sol).front().state;
}

double beta_hat_of_solution(const BoundaryProblem& p, const LambertSolution& sol) {
  if (p.same_ray())
    throw Error(ErrorCode::RectilinearDegenerate, "same-ray problems have no beta_hat");
  const kepler::State s = initial_state(p, sol);
  const ConicBranch world = kepler::eccentricity_vector(s);
  const ChordFrame frame = chord_frame(p.pos_a(), p.pos_b());
  const Vec2 e = frame.rotation.apply({world.alpha, world.beta});
  return maps::beta_hat(e.x, e.y);
}

}  // namespace lambert::reconstruct
