#include "lambert/maps.hpp"

#include <cmath>
#include <sstream>

#include "lambert/error.hpp"

namespace lambert::maps {
namespace {

void check_ends(double xa, double xb) {
  if (!(xa > 0.0) || !(xb >= 0.0) || !(xb < xa))
    throw Error(ErrorCode::DomainError, "requires 0 <= xb < xa");
}

double map_direct(double eta, double xa, double xb) {
  check_ends(xa, xb);
  const double denom = 0.5 * (xa + xb) - eta * std::sqrt(xa * xb);
  if (!(denom > 0.0)) {
    std::ostringstream msg;
    msg << "eta = " << eta << " is at or beyond the pole of the velocity map";
    throw Error(ErrorCode::DomainError, msg.str());
  }
  return (eta - std::sqrt(xb / xa)) / std::sqrt(denom);
}

// Closed-form inverse of map_direct over the whole real line. The quadratic
//   eta^2 + (va^2 g - 2 s) eta + s^2 - va^2 m = 0
// has discriminant va^2 (va^2 g^2 + 2 (xa - xb)); the root with
// sign(eta - s) == sign(va) is taken, in whichever form avoids cancellation.
double unmap_direct(double va, double xa, double xb) {
  check_ends(xa, xb);
  const double s = std::sqrt(xb / xa);
  const double g = std::sqrt(xa * xb);
  const double c = xa - xb;
  const double root = std::sqrt(va * va * g * g + 2.0 * c);
  if (va >= 0.0) return s + va * c / (root + va * g);
  return s + 0.5 * va * (root - va * g);
}

}  // namespace

double va_from_eta_direct(double eta, double xa, double xb) { return map_direct(eta, xa, xb); }

double eta_from_va_direct(double va, double xa, double xb) {
  check_ends(xa, xb);
  if (!(va < std::sqrt(2.0 / xa)))
    throw Error(ErrorCode::DomainError, "direct arcs require va < v_E");
  return unmap_direct(va, xa, xb);
}

double va_from_eta_indirect(double eta, double xa, double xb) {
  if (!(eta > -1.0))
    throw Error(ErrorCode::DomainError, "indirect arcs require eta > -1 (eta -> -1 is escape)");
  return -map_direct(eta, xa, xb);
}

double eta_from_va_indirect(double va, double xa, double xb) {
  check_ends(xa, xb);
  if (!(va < std::sqrt(2.0 / xa)))
    throw Error(ErrorCode::DomainError, "indirect arcs require va < v_E");
  return unmap_direct(-va, xa, xb);
}

double energy_rect(double va, double xa) {
  if (!(xa > 0.0)) throw Error(ErrorCode::DomainError, "xa must be positive");
  const double ve = std::sqrt(2.0 / xa);
  return -0.5 * (ve - va) * (ve + va);
}

double energy_sym(double eta, double r, double theta_a) {
  const double latus = r * (1.0 - eta * std::sin(theta_a));
  if (!(r > 0.0) || !(latus > 0.0))
    throw Error(ErrorCode::DomainError, "conic does not reach the symmetric ends");
  return (eta - 1.0) * (eta + 1.0) / (2.0 * latus);
}

double beta_hat(double alpha, double beta) {
  if (!(std::abs(alpha) < 1.0)) throw Error(ErrorCode::DomainError, "requires |alpha| < 1");
  return beta / std::sqrt((1.0 - alpha) * (1.0 + alpha));
}

double energy_from_beta_hat(double beta_hat, double sum_r, double chord) {
  if (!(chord > 0.0) || !(chord <= sum_r))
    throw Error(ErrorCode::DomainError, "requires 0 < chord <= sum of radii");
  const double height = std::sqrt((sum_r - chord) * (sum_r + chord));
  const double denom = sum_r - beta_hat * height;
  if (!(denom > 0.0)) throw Error(ErrorCode::DomainError, "beta_hat beyond the conic family");
  return (beta_hat - 1.0) * (beta_hat + 1.0) / denom;
}

}  // namespace lambert::maps
