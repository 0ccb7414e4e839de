#pragma once

#include "lambert/conic.hpp"
#include "lambert/vec2.hpp"

namespace lambert::kepler {

struct State {
  Vec2 pos;
  Vec2 vel;
};

double energy(const State& s);
double angular_momentum(const State& s);

/// Throws RectilinearState when the angular momentum vanishes.
ConicBranch eccentricity_vector(const State& s);

/// Time until the rectilinear state reaches the center, forward (direction
/// = +1) or backward (-1) in time; +inf if it never does.
double time_to_collision(const State& s, int direction = 1);

/// Exact two-body flow over time t (either sign) by universal variables.
/// Throws CollisionWithinInterval for a rectilinear state that reaches O
/// before |t|, and NoConvergence if the universal Kepler equation stalls.
State propagate(const State& s, double t);

}  // namespace lambert::kepler
