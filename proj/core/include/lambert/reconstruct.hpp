#pragma once

#include <vector>

#include "lambert/conic.hpp"
#include "lambert/geometry.hpp"
#include "lambert/propagator.hpp"
#include "lambert/solution.hpp"

namespace lambert::reconstruct {

/// Relative arrival error above which a reconstructed state is rejected.
inline constexpr double kProbeTolerance = 1e-6;

/// Conic through both framed points with the given beta. Throws
/// NonpositiveLatus when gamma <= 0.
ConicBranch conic_through(const ChordFrame& frame, double beta);
ConicBranch conic_through(const BoundaryProblem& p, double beta);

/// Direct when the motion from A to B in the given orientation (+1
/// counterclockwise, -1 clockwise) sweeps less than pi.
ArcClass classify_arc(const ConicBranch& conic, Vec2 framed_a, Vec2 framed_b, int orientation);

/// One planar realisation of a solution.
struct Arc {
  kepler::State state;  // world frame, at A
  ConicBranch conic;    // chord frame; zero for rectilinear arcs
  int orientation = 0;  // +1 counterclockwise, -1 clockwise, 0 radial
  double beta_hat = 0.0;
  bool probed = false;       // a propagation probe was run
  double probe_error = 0.0;  // |r(T) - B| / rA
};

/// Every planar arc for the solution: two mirror arcs when O lies on the
/// segment AB, one otherwise. Each is checked by propagating over the
/// solution's time; a failed check throws InconsistentSolution.
std::vector<Arc> reconstruct(const BoundaryProblem& p, const LambertSolution& sol);

/// State at A of the first arc returned by `reconstruct`.
kepler::State initial_state(const BoundaryProblem& p, const LambertSolution& sol);

/// beta / sqrt(1 - alpha^2) of the propagated state's conic, read in the
/// chord frame. Throws RectilinearDegenerate for same-ray problems.
double beta_hat_of_solution(const BoundaryProblem& p, const LambertSolution& sol);

}  // namespace lambert::reconstruct
