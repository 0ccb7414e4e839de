#pragma once

// Parameter transports between the isosceles (signed eccentricity eta) and
// flat (initial velocity va) images of a Lambert problem, plus the energies
// and the frame-independent parameter beta_hat.

namespace lambert::maps {

/// Direct arcs: va = (eta - sqrt(xb/xa)) / sqrt((xa + xb)/2 - eta sqrt(xa xb)).
/// Defined for eta below (xa + xb) / (2 sqrt(xa xb)); increasing and convex.
double va_from_eta_direct(double eta, double xa, double xb);

/// Inverse of va_from_eta_direct restricted to va < v_E (direct arcs, eta < 1).
double eta_from_va_direct(double va, double xa, double xb);

/// Simple indirect arcs: the direct formula with the numerator sign flipped.
/// eta in (-1, (xa + xb) / (2 sqrt(xa xb))) maps onto va in (-inf, v_E),
/// decreasingly; eta = 1 is the parabolic arc at va = -v_E.
double va_from_eta_indirect(double eta, double xa, double xb);
double eta_from_va_indirect(double va, double xa, double xb);

/// H = va^2/2 - 1/xa.
double energy_rect(double va, double xa);

/// H = (eta^2 - 1) / (2 r (1 - eta sin theta_a)). Throws DomainError when the
/// conic does not pass through the ends (1 - eta sin theta_a <= 0).
double energy_sym(double eta, double r, double theta_a);

/// beta / sqrt(1 - alpha^2); throws DomainError for |alpha| >= 1.
double beta_hat(double alpha, double beta);

/// H = (bh^2 - 1) / (sum_r - bh sqrt(sum_r^2 - chord^2)).
double energy_from_beta_hat(double beta_hat, double sum_r, double chord);

}  // namespace lambert::maps
