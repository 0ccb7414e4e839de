#include "lambert/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lambert/error.hpp"

namespace lambert::kepler {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxIterations = 60;
constexpr double kKeplerTolerance = 1e-14;

bool rectilinear(const State& s) {
  return std::abs(angular_momentum(s)) <= 1e-14 * norm(s.pos) * norm(s.vel);
}

// Stumpff functions C(z) = (1 - cos sqrt z)/z and S(z) = (sqrt z - sin sqrt z)/z^1.5.
void stumpff(double z, double& c, double& s) {
  if (std::abs(z) < 1.0) {
    // Alternating series; 16 terms leave < 1e-30 for |z| < 1.
    double term_c = 0.5;
    double term_s = 1.0 / 6.0;
    c = term_c;
    s = term_s;
    for (int k = 1; k < 16; ++k) {
      term_c *= -z / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
      term_s *= -z / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
      c += term_c;
      s += term_s;
    }
    return;
  }
  if (z > 0.0) {
    const double r = std::sqrt(z);
    const double h = std::sin(0.5 * r);
    c = 2.0 * h * h / z;
    s = (r - std::sin(r)) / (z * r);
  } else {
    const double r = std::sqrt(-z);
    const double h = std::sinh(0.5 * r);
    c = 2.0 * h * h / (-z);
    s = (std::sinh(r) - r) / (-z * r);
  }
}

struct Universal {
  double r0;
  double sigma0;  // pos . vel
  double alpha;   // 2/r0 - v0^2 = -2H

  double time(double chi, double& radius) const {
    const double z = alpha * chi * chi;
    double c = 0.0;
    double s = 0.0;
    stumpff(z, c, s);
    const double chi2 = chi * chi;
    radius = chi2 * c + sigma0 * chi * (1.0 - z * s) + r0 * (1.0 - z * c);
    return sigma0 * chi2 * c + (1.0 - alpha * r0) * chi2 * chi * s + r0 * chi;
  }
};

double solve_universal(const Universal& u, double t) {
  if (t == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double radius = 0.0;
  if (u.alpha > 0.0) {
    // t has been reduced to [0, period); chi advances 2 pi / sqrt(alpha) per period.
    hi = kTwoPi / std::sqrt(u.alpha);
  } else if (t > 0.0) {
    // Unbounded orbits: chi grows only logarithmically in t, so grow the
    // bracket from below rather than guessing t / r0 (sinh would overflow).
    hi = std::min(t / u.r0, 1.0);
    for (int k = 0; u.time(hi, radius) < t; ++k) {
      lo = hi;
      hi *= 2.0;
      if (k > 2000) throw Error(ErrorCode::NoConvergence, "cannot bracket universal anomaly");
    }
  } else {
    lo = -std::min(-t / u.r0, 1.0);
    for (int k = 0; u.time(lo, radius) > t; ++k) {
      hi = lo;
      lo *= 2.0;
      if (k > 2000) throw Error(ErrorCode::NoConvergence, "cannot bracket universal anomaly");
    }
  }

  double chi = u.alpha > 0.0 ? std::clamp(u.alpha * t, lo, hi) : 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double f = u.time(chi, radius) - t;
    if (std::abs(f) <= kKeplerTolerance * std::abs(t)) return chi;
    if (!std::isfinite(f)) {
      (chi > 0.0 ? hi : lo) = chi;
      chi = 0.5 * (lo + hi);
      continue;
    }
    if (f > 0.0)
      hi = chi;
    else
      lo = chi;
    double next = chi - f / radius;
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - chi);
    chi = next;
    if (step <= kKeplerTolerance * std::max(std::abs(chi), 1e-300)) return chi;
  }
  std::ostringstream msg;
  msg << "universal Kepler equation did not converge for t = " << t;
  throw Error(ErrorCode::NoConvergence, msg.str());
}

}  // namespace

double energy(const State& s) { return 0.5 * dot(s.vel, s.vel) - 1.0 / norm(s.pos); }

double angular_momentum(const State& s) { return cross(s.pos, s.vel); }

ConicBranch eccentricity_vector(const State& s) {
  const double c = angular_momentum(s);
  if (c == 0.0 || rectilinear(s))
    throw Error(ErrorCode::RectilinearState, "zero angular momentum has no conic branch");
  const double r = norm(s.pos);
  return {s.pos.x / r - c * s.vel.y, s.pos.y / r + c * s.vel.x, c * c};
}

double time_to_collision(const State& s, int direction) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (!rectilinear(s)) return kInf;
  const double x = norm(s.pos);
  const double radial = direction * dot(s.pos, s.vel) / x;
  const double w = 2.0 / x - dot(s.vel, s.vel);  // -2H
  if (std::abs(w) * x <= 1e-14) return radial < 0.0 ? std::sqrt(2.0) / 3.0 * x * std::sqrt(x) : kInf;
  if (w > 0.0) {
    const double a = 1.0 / w;
    const double phi = std::acos(std::clamp(1.0 - x / a, -1.0, 1.0));
    const double scale = a * std::sqrt(a);
    return radial < 0.0 ? scale * (phi - std::sin(phi)) : scale * (kTwoPi - phi + std::sin(phi));
  }
  if (radial >= 0.0) return kInf;
  const double a = -1.0 / w;
  const double f0 = std::acosh(1.0 + x / a);
  return a * std::sqrt(a) * (std::sinh(f0) - f0);
}

State propagate(const State& s, double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::DomainError, "propagation time must be finite");
  if (t == 0.0) return s;
  const double r0 = norm(s.pos);
  if (!(r0 > 0.0)) throw Error(ErrorCode::DomainError, "state at the center");
  if (rectilinear(s) && time_to_collision(s, t > 0.0 ? 1 : -1) <= std::abs(t)) {
    std::ostringstream msg;
    msg << "rectilinear state reaches the center within t = " << t;
    throw Error(ErrorCode::CollisionWithinInterval, msg.str());
  }

  const Universal u{r0, dot(s.pos, s.vel), 2.0 / r0 - dot(s.vel, s.vel)};
  double reduced = t;
  if (u.alpha > 0.0) {
    const double period = kTwoPi / (u.alpha * std::sqrt(u.alpha));
    reduced = std::fmod(t, period);
    if (reduced < 0.0) reduced += period;
  }
  const double chi = solve_universal(u, reduced);
  const double z = u.alpha * chi * chi;
  double c = 0.0;
  double sv = 0.0;
  stumpff(z, c, sv);
  double r = 0.0;
  u.time(chi, r);
  const double chi2 = chi * chi;
  const double f = 1.0 - chi2 * c / r0;
  const double g = reduced - chi2 * chi * sv;
  const double fdot = chi * (z * sv - 1.0) / (r * r0);
  const double gdot = 1.0 - chi2 * c / r;
  return {f * s.pos + g * s.vel, fdot * s.pos + gdot * s.vel};
}

}  // namespace lambert::kepler
