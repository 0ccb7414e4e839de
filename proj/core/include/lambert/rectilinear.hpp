#pragma once

namespace lambert::rectilinear {

/// Rectilinear arc from xa toward the center with initial radial velocity va
/// (negative = inbound). Requires 0 <= xb < xa.
struct ArcQuery {
  double xa = 0.0;
  double xb = 0.0;
  double va = 0.0;
};

/// Queries above escape_velocity(xa) * (1 - kEscapeMargin) are rejected.
inline constexpr double kEscapeMargin = 1e-9;

/// Relative tolerance requested from every time-of-flight quadrature.
inline constexpr double kQuadratureTolerance = 1e-12;

double escape_velocity(double xa);

/// 2/xa - va^2 = -2H, factored to stay accurate near escape.
double minus_twice_energy(double va, double xa);

/// Radius reached once the velocity has changed by u <= 0 (energy conservation).
/// Throws DomainError past escape.
double x_of_u(double u, const ArcQuery& q);

/// Arrival velocity at xb on the direct (collision-free) arc; always negative.
double arrival_velocity(const ArcQuery& q);

/// Elapsed time on the direct arc from xa to xb > 0.
/// Strictly increasing and convex in va, from 0 at -inf to +inf at escape.
double tof_direct(const ArcQuery& q);
double tof_direct_derivative(const ArcQuery& q);
double tof_direct_second_derivative(const ArcQuery& q);

/// Period 2*pi*(-2H)^(-3/2) of the bounded rectilinear orbit. Throws NonElliptic.
double period(double va, double xa);
double period_derivative(double va, double xa);
double period_second_derivative(double va, double xa);

/// Elapsed time on the simple indirect arc (one bounce at the center).
/// xb == 0 means arrival at the center itself.
double tof_indirect(const ArcQuery& q);
double tof_indirect_derivative(const ArcQuery& q);

/// Time to fall from radius x to the center starting at radial velocity v <= 0.
/// Evaluated with the x = X sin^2(s) substitution, which removes the
/// inverse-square-root endpoint singularity when v -> 0.
double fall_time(double x, double v);

}  // namespace lambert::rectilinear
