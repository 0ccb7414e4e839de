#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lambert/error.hpp"
#include "lambert/propagator.hpp"
#include "oracles.hpp"

using namespace lambert;
using kepler::State;
constexpr double kPi = std::numbers::pi;

TEST_CASE("circular orbit is exact") {
  const State s{{1.0, 0.0}, {0.0, 1.0}};
  for (double t : {0.1, 0.5 * kPi, 3.0, 100.0, -2.0}) {
    CAPTURE(t);
    const State e = kepler::propagate(s, t);
    CHECK(norm(e.pos - Vec2{std::cos(t), std::sin(t)}) <= 1e-12);
    CHECK(norm(e.vel - Vec2{-std::sin(t), std::cos(t)}) <= 1e-12);
  }
}

TEST_CASE("one step equals many") {
  for (const State s : {State{{1.0, 0.0}, {0.3, 1.2}}, State{{1.0, 0.2}, {0.1, 1.45}},
                        State{{-0.5, 2.0}, {0.9, 0.4}}}) {
    const State one = kepler::propagate(s, 10.0);
    State many = s;
    for (int i = 0; i < 100; ++i) many = kepler::propagate(many, 0.1);
    CHECK(norm(one.pos - many.pos) <= 1e-10 * norm(one.pos));
  }
}

TEST_CASE("backward propagation inverts forward") {
  const State s{{1.0, 0.5}, {-0.4, 1.3}};
  const State there = kepler::propagate(s, 7.5);
  const State back = kepler::propagate(there, -7.5);
  CHECK(norm(back.pos - s.pos) <= 1e-12);
  CHECK(norm(back.vel - s.vel) <= 1e-12);
}

TEST_CASE("invariants") {
  const State s{{1.0, 0.0}, {0.2, 1.1}};
  const auto k = kepler::eccentricity_vector(s);
  CHECK(k.gamma == doctest::Approx(1.21));
  CHECK(k.energy() == doctest::Approx(kepler::energy(s)).epsilon(1e-14));
  // r = alpha x + beta y + gamma at the state itself.
  CHECK(k.alpha * s.pos.x + k.beta * s.pos.y + k.gamma == doctest::Approx(1.0));
  CHECK_THROWS_AS(kepler::eccentricity_vector({{1.0, 0.0}, {0.5, 0.0}}), Error);
}

TEST_CASE("radial motion follows the flat-orbit closed forms") {
  // Inbound parabolic from x = 2: reaches x = 1 after the anchor time.
  const double t = std::sqrt(2.0) / 3.0 * (2.0 * std::sqrt(2.0) - 1.0);
  const State e = kepler::propagate({{2.0, 0.0}, {-1.0, 0.0}}, t);
  CHECK(e.pos.x == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(e.pos.y) <= 1e-15);
  // Elliptic: time to the center from rest at x = 2 is half a period of a = 1.
  CHECK(kepler::time_to_collision({{2.0, 0.0}, {0.0, 0.0}}) == doctest::Approx(kPi));
  CHECK(kepler::time_to_collision({{2.0, 0.0}, {0.0, 0.0}}, -1) == doctest::Approx(kPi));
  CHECK(kepler::time_to_collision({{2.0, 0.0}, {-1.0, 0.0}}) ==
        doctest::Approx(oracle::time_from_center(2.0, 0.0)));
  CHECK(std::isinf(kepler::time_to_collision({{2.0, 0.0}, {1.5, 0.0}})));
  CHECK(std::isinf(kepler::time_to_collision({{2.0, 0.0}, {0.0, 1.0}})));
  CHECK_THROWS_AS(kepler::propagate({{2.0, 0.0}, {-1.0, 0.0}}, 2.0), Error);
}

TEST_CASE("hyperbolic flyby conserves energy and momentum") {
  const State s{{1.0, 0.0}, {0.0, 2.0}};
  for (double t : {-50.0, 5.0, 1000.0}) {
    const State e = kepler::propagate(s, t);
    CHECK(kepler::energy(e) == doctest::Approx(kepler::energy(s)).epsilon(1e-12));
    CHECK(kepler::angular_momentum(e) == doctest::Approx(2.0).epsilon(1e-12));
  }
}
