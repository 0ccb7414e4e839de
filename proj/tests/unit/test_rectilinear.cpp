#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lambert/error.hpp"
#include "lambert/rectilinear.hpp"
#include "oracles.hpp"

using namespace lambert;
using namespace lambert::rectilinear;
constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

TEST_CASE("closed-form anchors") {
  CHECK(std::abs(tof_direct({2, 1, -1}) - kSqrt2 / 3.0 * (2.0 * kSqrt2 - 1.0)) <= 1e-12);
  CHECK(std::abs(tof_direct({2, 1, 0}) - (0.5 * kPi + 1.0)) <= 1e-12);
  CHECK(std::abs(tof_indirect({2, 1, 0}) - (1.5 * kPi - 1.0)) <= 1e-12);
  CHECK(std::abs(tof_indirect({2, 1, -1}) - kSqrt2 / 3.0 * (2.0 * kSqrt2 + 1.0)) <= 1e-12);
}

TEST_CASE("times agree with anomaly closed forms") {
  for (double xb : {0.05, 0.5, 1.0, 1.9}) {
    const double ve = escape_velocity(2.0);
    for (double s : {-4.0, -1.5, -1.0, -0.3, 0.0, 0.2, 0.7, 0.99}) {
      const double va = s * ve;
      CAPTURE(xb);
      CAPTURE(va);
      const double td = tof_direct({2.0, xb, va});
      const double ti = tof_indirect({2.0, xb, va});
      CHECK(std::abs(td - oracle::direct_time(2.0, xb, va)) <= 1e-11 * (1.0 + td));
      CHECK(std::abs(ti - oracle::indirect_time(2.0, xb, va)) <= 1e-11 * (1.0 + ti));
    }
  }
}

TEST_CASE("center bounce with xb = 0") {
  // Fall from xa and back up to nothing: the fall time alone.
  const double va = -0.4;
  const double w = 2.0 / 3.0 - va * va;
  CHECK(tof_indirect({3.0, 0.0, va}) ==
        doctest::Approx(oracle::time_from_center(3.0, w)).epsilon(1e-12));
  CHECK(fall_time(0.0, -1.0) == 0.0);
  CHECK_THROWS_AS(tof_direct({3.0, 0.0, va}), Error);
}

TEST_CASE("derivatives against finite differences") {
  const double h = 1e-5;
  for (double va : {-2.0, -0.6, 0.0, 0.3, 0.8}) {
    CAPTURE(va);
    const ArcQuery q{2.0, 0.7, va};
    const double fd1 = (tof_direct({2.0, 0.7, va + h}) - tof_direct({2.0, 0.7, va - h})) / (2 * h);
    CHECK(tof_direct_derivative(q) == doctest::Approx(fd1).epsilon(1e-7));
    const double fd2 = (tof_direct_derivative({2.0, 0.7, va + h}) -
                        tof_direct_derivative({2.0, 0.7, va - h})) / (2 * h);
    CHECK(tof_direct_second_derivative(q) == doctest::Approx(fd2).epsilon(1e-6));
    const double fi = (tof_indirect({2.0, 0.7, va + h}) - tof_indirect({2.0, 0.7, va - h})) / (2 * h);
    CHECK(tof_indirect_derivative(q) == doctest::Approx(fi).epsilon(1e-7));
    if (std::abs(va) >= escape_velocity(2.0)) continue;
    const double fp = (period(va + h, 2.0) - period(va - h, 2.0)) / (2 * h);
    CHECK(period_derivative(va, 2.0) == doctest::Approx(fp).epsilon(1e-8));
    const double fpp = (period_derivative(va + h, 2.0) - period_derivative(va - h, 2.0)) / (2 * h);
    CHECK(period_second_derivative(va, 2.0) == doctest::Approx(fpp).epsilon(1e-7));
  }
  const double fi0 = (tof_indirect({2.0, 0.0, h}) - tof_indirect({2.0, 0.0, -h})) / (2 * h);
  CHECK(tof_indirect_derivative({2.0, 0.0, 0.0}) == doctest::Approx(fi0).epsilon(1e-7));
}

TEST_CASE("period and escape") {
  CHECK(escape_velocity(2.0) == doctest::Approx(1.0));
  CHECK(period(0.0, 2.0) == doctest::Approx(2.0 * kPi));
  CHECK_THROWS_AS(period(1.0, 2.0), Error);
  CHECK(minus_twice_energy(0.5, 2.0) == doctest::Approx(0.75));
}

TEST_CASE("radius along the arc") {
  const ArcQuery q{2.0, 1.0, 0.0};
  CHECK(x_of_u(0.0, q) == doctest::Approx(2.0));
  CHECK(arrival_velocity(q) == doctest::Approx(-1.0));
  CHECK(x_of_u(-1.0, q) == doctest::Approx(1.0));
  CHECK_THROWS_AS(x_of_u(0.1, q), Error);
}

TEST_CASE("escape margin is enforced") {
  CHECK_THROWS_AS(tof_direct({2.0, 1.0, 1.0}), Error);
  CHECK_NOTHROW(tof_direct({2.0, 1.0, 1.0 - 1e-8}));
}
