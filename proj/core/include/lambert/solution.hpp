#pragma once

#include <string_view>

namespace lambert {

enum class ArcKind { DirectSimple, IndirectSimple, MultiRev };

/// Type of the final arc after the full revolutions.
enum class Tail { Direct, Indirect };

struct ArcClass {
  ArcKind kind = ArcKind::DirectSimple;
  int revs = 0;
  Tail tail = Tail::Direct;

  static constexpr ArcClass direct() noexcept { return {ArcKind::DirectSimple, 0, Tail::Direct}; }
  static constexpr ArcClass indirect() noexcept {
    return {ArcKind::IndirectSimple, 0, Tail::Indirect};
  }
  static constexpr ArcClass multi_rev(int n, Tail t) noexcept { return {ArcKind::MultiRev, n, t}; }

  /// The closing arc sweeps less than pi (its convex hull excludes O).
  constexpr bool direct_sweep() const noexcept { return tail == Tail::Direct; }

  friend constexpr bool operator==(const ArcClass&, const ArcClass&) = default;
};

std::string_view to_string(ArcKind kind) noexcept;
std::string_view to_string(Tail tail) noexcept;

/// One Keplerian arc expressed in the rectilinear image of its problem.
/// va, eta and beta_hat are tied together by the maps module; energy is
/// shared by every member of the Lambert-theorem equivalence class.
struct LambertSolution {
  ArcClass arc_class;
  double va = 0.0;
  double eta = 0.0;
  double beta_hat = 0.0;
  double energy = 0.0;
  double tof = 0.0;
  double tof_residual = 0.0;  // |T(va) - tof| / tof
  bool certified = false;     // count and convergence backed by convexity
  int iterations = 0;
  int multiplicity = 1;  // 2 for the mirror pair when O lies on the segment AB
};

}  // namespace lambert
