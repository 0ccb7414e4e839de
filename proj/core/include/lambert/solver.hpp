#pragma once

#include <vector>

#include "lambert/geometry.hpp"
#include "lambert/solution.hpp"

namespace lambert::solver {

/// Convergence targets for the boundary-value root finders.
inline constexpr double kResidualTarget = 1e-12;   // relative T residual
inline constexpr double kStepTarget = 1e-14;       // va step, relative to v_E
inline constexpr double kAcceptResidual = 1e-10;   // worst residual ever returned
inline constexpr double kTieTolerance = 1e-12;     // |T - T_min| <= this * T
inline constexpr int kMaxIterations = 100;
inline constexpr int kDefaultSamples = 2048;

/// The unique simple arc of the requested tail type. Direct arcs use Newton
/// from the upper bracket end, which converges monotonically because the
/// time is increasing and convex in va. Throws DegenerateDirect for a direct
/// request when O lies on the segment AB.
LambertSolution solve_simple(const RectilinearEquivalent& re, double tof, Tail tail);

struct Minimum {
  double tof = 0.0;
  double va = 0.0;
  int iterations = 0;
  bool certified = false;
};

/// Least elapsed time of an n-revolution arc with the given tail,
/// n * period(va) + T_tail(va) over va in (-v_E, v_E). Certified (convex
/// objective) for the direct tail; a sampled search for the indirect tail.
Minimum tmin_multirev(const RectilinearEquivalent& re, int revs, Tail tail = Tail::Direct);

/// 0, 1 or 2 n-revolution arcs with a direct tail, ordered by va.
/// A request with tail == Indirect is forwarded to solve_multirev_indirect.
std::vector<LambertSolution> solve_multirev(const RectilinearEquivalent& re, int revs,
                                            double tof, Tail tail = Tail::Direct);

/// Roots of n * period + T_indirect located on a uniform va grid and refined
/// by safeguarded Newton. Not certified complete. Throws SamplingInconclusive
/// when a sampled minimum grazes the target within the resolution limit.
std::vector<LambertSolution> solve_multirev_indirect(const RectilinearEquivalent& re, int revs,
                                                     double tof,
                                                     int samples = kDefaultSamples);

struct CensusRow {
  int revs = 0;
  int direct = 0;
  int indirect = 0;
  bool direct_applicable = true;  // false when O lies on the segment AB
  bool direct_certified = true;
  bool indirect_certified = true;
  bool indirect_inconclusive = false;
};

struct Census {
  std::vector<CensusRow> rows;
  int total() const noexcept;
};

/// Solution counts by revolution number, n = 0..n_max. Rows are evaluated
/// concurrently.
Census count_solutions(const BoundaryProblem& p, double tof, int n_max);
Census count_solutions(const RectilinearEquivalent& re, double tof, int n_max);

/// Every solution up to n_max revolutions, sorted by (revs, tail, va).
/// With `include_indirect_multirev` false only certified families are solved.
std::vector<LambertSolution> solve_all(const RectilinearEquivalent& re, double tof, int n_max,
                                       bool include_indirect_multirev = true);

}  // namespace lambert::solver
