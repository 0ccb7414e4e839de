#pragma once

namespace lambert::symmetric {

/// Ends at polar angles theta_a and pi - theta_a on a circle of radius r;
/// conics through them are r = C^2 / (1 - eta sin theta).
struct ArcQuery {
  double r = 0.0;
  double theta_a = 0.0;
  double eta = 0.0;
};

/// Direct-arc queries need eta <= 1 - kPoleMargin.
inline constexpr double kPoleMargin = 1e-9;

/// Elapsed time along the upper (direct) arc by quadrature in the polar
/// angle. Increasing and convex in eta; 0 at -inf, +inf at eta -> 1.
double tof_direct(const ArcQuery& q);

/// d/d eta of tof_direct, differentiated under the integral sign.
double tof_direct_deta(const ArcQuery& q);

/// Elapsed time along the lower (simple indirect) arc, eta in
/// (-1, 1/sin theta_a), via the indirect velocity map and the rectilinear
/// image. Decreasing in eta.
double tof_indirect(const ArcQuery& q);

}  // namespace lambert::symmetric
