#pragma once

#include <cmath>

namespace lambert {

/// Conic with focus at O written as r = alpha x + beta y + gamma, where
/// (alpha, beta) is the eccentricity vector (pointing away from pericenter)
/// and gamma = C^2 is the semi-latus rectum.
struct ConicBranch {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double eccentricity() const noexcept { return std::hypot(alpha, beta); }
  double energy() const noexcept {
    return (alpha * alpha + beta * beta - 1.0) / (2.0 * gamma);
  }
};

}  // namespace lambert
