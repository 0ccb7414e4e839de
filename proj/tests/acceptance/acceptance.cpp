// Acceptance suite: one line per criterion, exit status 1 if any fails.
// All reference values come from tests/support/oracles.hpp or closed forms.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lambert/error.hpp"
#include "lambert/geometry.hpp"
#include "lambert/maps.hpp"
#include "lambert/propagator.hpp"
#include "lambert/reconstruct.hpp"
#include "lambert/rectilinear.hpp"
#include "lambert/solver.hpp"
#include "lambert/symmetric.hpp"
#include "oracles.hpp"

using namespace lambert;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240917;

namespace tol {
constexpr double kAnchor = 1e-9;          // absolute
constexpr double kEquivalenceTime = 1e-9;  // times (1 + T)
constexpr double kEquivalenceEnergy = 1e-12;
constexpr double kRoundTrip = 1e-8;  // times rA
constexpr double kTmin = 1e-9;       // relative
constexpr double kBetaSpread = 1e-9;
constexpr double kBetaEta = 1e-10;
constexpr double kConservation = 1e-12;
constexpr double kQuarter = 1e-12;
constexpr double kFastLimit = 1.05;  // T(-1e3) <= 1.05 * span / 1e3
constexpr double kSlowLimit = 1e3;
}  // namespace tol

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Arrival error at B after propagating the reconstructed state, relative to rA.
double round_trip(const BoundaryProblem& p, const kepler::State& s, double tof) {
  return norm(kepler::propagate(s, tof).pos - p.pos_b()) / p.r_a();
}

BoundaryProblem random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.2, 5.0);
  std::uniform_real_distribution<double> angle(0.05, 2.0 * kPi - 0.05);
  const double ra = radius(rng);
  const double rb = radius(rng);
  return BoundaryProblem::from_triangle(ra, rb, angle(rng));
}

// ---- 1 -----------------------------------------------------------------------
Outcome closed_form_anchors() {
  const double r2 = std::sqrt(2.0);
  struct Anchor {
    double got, want;
  };
  const Anchor anchors[] = {
      {rectilinear::tof_direct({2, 1, -1}), r2 / 3.0 * (2.0 * r2 - 1.0)},
      {rectilinear::tof_direct({2, 1, 0}), 0.5 * kPi + 1.0},
      {rectilinear::tof_indirect({2, 1, 0}), 1.5 * kPi - 1.0},
      {rectilinear::tof_indirect({2, 1, -1}), r2 / 3.0 * (2.0 * r2 + 1.0)},
      {symmetric::tof_direct({1.0, 0.25 * kPi, 0.0}), 0.5 * kPi},
  };
  double worst = 0.0;
  for (const auto& a : anchors) worst = std::max(worst, std::abs(a.got - a.want));
  return {worst <= tol::kAnchor, fmt("max abs error %.2e over 5 anchors", worst)};
}

// ---- 2 -----------------------------------------------------------------------
Outcome lambert_equivalence() {
  const RectilinearEquivalent cases[] = {{2.0, 1.0}, {6.0, 3.0}, {1.7071, 0.2929}};
  double worst_t = 0.0;
  double worst_h = 0.0;
  for (const auto& re : cases) {
    const auto se = reduce_to_symmetric(re);
    for (int i = 0; i < 100; ++i) {
      const double eta = -3.0 + 3.99 * (i + 1) / 101.0;
      const double ts = symmetric::tof_direct({se.r, se.theta_a, eta});
      const double va = maps::va_from_eta_direct(eta, re.xa, re.xb);
      const double tr = rectilinear::tof_direct({re.xa, re.xb, va});
      worst_t = std::max(worst_t, std::abs(ts - tr) / (1.0 + tr));
      // Relative to the potential scale 1/xa where H itself crosses zero.
      const double hr = maps::energy_rect(va, re.xa);
      const double hs = maps::energy_sym(eta, se.r, se.theta_a);
      worst_h = std::max(worst_h, std::abs(hs - hr) / std::max(std::abs(hr), 1.0 / re.xa));
    }
  }
  return {worst_t <= tol::kEquivalenceTime && worst_h <= tol::kEquivalenceEnergy,
          fmt("max |dT|/(1+T) %.2e, max rel |dH| %.2e (300 points)", worst_t, worst_h)};
}

// ---- 3 -----------------------------------------------------------------------
Outcome monotone_convex() {
  const RectilinearEquivalent cases[] = {{2.0, 1.0}, {6.0, 3.0}, {1.7071, 0.2929}};
  constexpr int n = 200;
  double min_d1_direct = INFINITY, min_d1_indirect = INFINITY, min_d2_direct = INFINITY,
         min_d2_sym = INFINITY;
  for (const auto& re : cases) {
    const double ve = rectilinear::escape_velocity(re.xa);
    std::vector<double> td(n), ti(n), ts(n);
    const auto se = reduce_to_symmetric(re);
    for (int i = 0; i < n; ++i) {
      const double va = ve * (-3.0 + 3.95 * i / (n - 1));
      td[i] = rectilinear::tof_direct({re.xa, re.xb, va});
      ti[i] = rectilinear::tof_indirect({re.xa, re.xb, va});
      const double eta = -3.0 + 3.95 * i / (n - 1);
      ts[i] = symmetric::tof_direct({se.r, se.theta_a, eta});
    }
    for (int i = 1; i < n; ++i) {
      min_d1_direct = std::min(min_d1_direct, td[i] - td[i - 1]);
      min_d1_indirect = std::min(min_d1_indirect, ti[i] - ti[i - 1]);
    }
    for (int i = 1; i + 1 < n; ++i) {
      min_d2_direct = std::min(min_d2_direct, td[i + 1] - 2.0 * td[i] + td[i - 1]);
      min_d2_sym = std::min(min_d2_sym, ts[i + 1] - 2.0 * ts[i] + ts[i - 1]);
    }
  }
  const bool pass =
      min_d1_direct > 0.0 && min_d1_indirect > 0.0 && min_d2_direct > 0.0 && min_d2_sym > 0.0;
  std::ostringstream d;
  d << "min dT_D " << min_d1_direct << ", min dT_I " << min_d1_indirect << ", min d2T_D "
    << min_d2_direct << ", min d2T_D^S " << min_d2_sym;
  return {pass, d.str()};
}

// ---- 4 -----------------------------------------------------------------------
Outcome indirect_nonconvexity() {
  constexpr double h = 1e-3;
  double best = INFINITY;
  double best_ratio = 0.0;
  int negatives = 0;
  for (int k = 0; k <= 99; ++k) {
    const double ratio = 0.9 + 0.099 * k / 99.0;
    auto t = [&](double va) { return rectilinear::tof_indirect({1.0, ratio, va}); };
    const double d2 = (t(h) - 2.0 * t(0.0) + t(-h)) / (h * h);
    if (d2 < 0.0) ++negatives;
    if (d2 < best) {
      best = d2;
      best_ratio = ratio;
    }
  }
  return {negatives > 0, fmt("%.0f of 100 ratios negative; most negative %.4g at xb/xa = %.4f",
                             negatives, best, best_ratio)};
}

// ---- 5 -----------------------------------------------------------------------
Outcome uniqueness_and_counts() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> tof_dist(0.05, 50.0);
  int bad_counts = 0;
  double worst = 0.0;
  int multirev_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_triangle(rng);
    const double tof = tof_dist(rng);
    const auto re = reduce_to_rectilinear(p);
    const auto census = solver::count_solutions(p, tof, 0);
    if (census.rows[0].direct != 1 || census.rows[0].indirect != 1) ++bad_counts;
    for (auto tail : {Tail::Direct, Tail::Indirect}) {
      const auto s = solver::solve_simple(re, tof, tail);
      worst = std::max(worst, round_trip(p, reconstruct::initial_state(p, s), tof));
    }
    for (int n = 1; n <= 3; ++n) {
      const auto m = solver::tmin_multirev(re, n);
      const auto two = solver::solve_multirev(re, n, 2.0 * m.tof);
      if (two.size() != 2) ++bad_counts;
      for (const auto& s : two)
        worst = std::max(worst, round_trip(p, reconstruct::initial_state(p, s), s.tof));
      if (!solver::solve_multirev(re, n, 0.5 * m.tof).empty()) ++bad_counts;
      ++multirev_checked;
    }
  }
  return {bad_counts == 0 && worst <= tol::kRoundTrip,
          fmt("%.0f count mismatches; worst arrival error %.2e rA over 200 simple + %.0f "
              "multi-rev pairs",
              bad_counts, worst, multirev_checked)};
}

// ---- 6 -----------------------------------------------------------------------
Outcome tmin_certification() {
  std::mt19937_64 rng(kSeed + 6);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_triangle(rng);
    const auto re = reduce_to_rectilinear(p);
    const double ve = std::sqrt(2.0 / re.xa);
    for (int n = 1; n <= 3; ++n) {
      const auto m = solver::tmin_multirev(re, n);
      auto f = [&](double va) {
        return n * oracle::period(re.xa, va) + oracle::direct_time(re.xa, re.xb, va);
      };
      const double ref = oracle::golden_min(f, -ve * (1.0 - 1e-9), ve * (1.0 - 1e-9), 1e-11 * ve);
      worst = std::max(worst, std::abs(m.tof - ref) / ref);
    }
  }
  return {worst <= tol::kTmin, fmt("max relative T_min gap %.2e over 60 cases", worst)};
}

// ---- 7 -----------------------------------------------------------------------
Outcome beta_hat_invariance() {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> sum_dist(1.0, 8.0);
  std::uniform_real_distribution<double> frac(0.1, 0.9);
  std::uniform_real_distribution<double> tof_dist(0.5, 10.0);
  double worst_spread = 0.0;
  double worst_eta = 0.0;
  for (int family = 0; family < 10; ++family) {
    const double sum = sum_dist(rng);
    const double chord = frac(rng) * sum;
    const double tof = tof_dist(rng);
    // eta of the symmetric image, found by bisection on its own time law.
    const auto se = reduce_to_symmetric(reduce_to_rectilinear(0.5 * sum, 0.5 * sum, chord));
    auto f = [&](double eta) { return symmetric::tof_direct({se.r, se.theta_a, eta}) - tof; };
    double lo = -2.0;
    while (f(lo) > 0.0) lo *= 2.0;
    const double eta = oracle::bisect(f, lo, 1.0 - 1e-9);

    double lo_b = INFINITY, hi_b = -INFINITY;
    for (int k = 0; k < 5; ++k) {
      const double d = 0.5 * chord * (-0.8 + 0.4 * k);
      const auto p = BoundaryProblem::from_sides(0.5 * sum + d, 0.5 * sum - d, chord);
      const auto s = solver::solve_simple(reduce_to_rectilinear(p), tof, Tail::Direct);
      const double bh = reconstruct::beta_hat_of_solution(p, s);
      lo_b = std::min(lo_b, bh);
      hi_b = std::max(hi_b, bh);
      worst_eta = std::max(worst_eta, std::abs(bh - eta));
    }
    worst_spread = std::max(worst_spread, hi_b - lo_b);
  }
  return {worst_spread <= tol::kBetaSpread && worst_eta <= tol::kBetaEta,
          fmt("max family spread %.2e, max |beta_hat - eta| %.2e", worst_spread, worst_eta)};
}

// ---- 8 -----------------------------------------------------------------------
Outcome propagator_self_checks() {
  const kepler::State states[] = {
      {{1.0, 0.0}, {0.2, 1.1}},              // elliptic
      {{0.3, -1.2}, {0.05, 0.2}},            // eccentric elliptic
      {{1.0, 0.0}, {0.0, std::sqrt(2.0)}},   // parabolic
      {{1.0, 0.0}, {0.3, 1.8}},              // hyperbolic
      {{-2.0, 0.5}, {1.5, 0.9}},             // hyperbolic, outbound
  };
  const double times[] = {0.37, -3.1, 47.0, 1000.0};
  // Each drift is measured against the size of the terms the invariant is
  // evaluated from at the propagated state: v^2/2 + 1/r for H, |r||v| for C
  // and 1 + |r||v|^2 for the eccentricity vector. A correctly rounded state
  // already carries errors of eps times these. Raw drifts are reported too.
  double worst = 0.0;
  double raw = 0.0;
  for (const auto& s : states) {
    const double h0 = kepler::energy(s);
    const double c0 = kepler::angular_momentum(s);
    const auto e0 = kepler::eccentricity_vector(s);
    for (double t : times) {
      const auto e = kepler::propagate(s, t);
      const auto k = kepler::eccentricity_vector(e);
      const double r = norm(e.pos);
      const double v = norm(e.vel);
      const double dh = std::abs(kepler::energy(e) - h0);
      const double dc = std::abs(kepler::angular_momentum(e) - c0);
      const double de = std::hypot(k.alpha - e0.alpha, k.beta - e0.beta);
      raw = std::max({raw, dh, dc / std::abs(c0), de});
      worst = std::max({worst, dh / (0.5 * v * v + 1.0 / r), dc / (r * v), de / (1.0 + r * v * v)});
    }
  }
  const auto q = kepler::propagate({{1.0, 0.0}, {0.0, 1.0}}, 0.5 * kPi);
  const double quarter = std::max(norm(q.pos - Vec2{0.0, 1.0}), norm(q.vel - Vec2{-1.0, 0.0}));
  return {worst <= tol::kConservation && quarter <= tol::kQuarter,
          fmt("max scaled invariant drift %.2e (raw %.2e); circular quarter error %.2e", worst,
              raw, quarter)};
}

// ---- 9 -----------------------------------------------------------------------
Outcome degenerate_segment() {
  const auto p = BoundaryProblem::from_triangle(2.0, 1.0, kPi);
  const double tof = 3.0;
  const auto census = solver::count_solutions(p, tof, 0);
  const bool counts = census.rows[0].direct == 0 && census.rows[0].indirect == 2;
  const auto s = solver::solve_simple(reduce_to_rectilinear(p), tof, Tail::Indirect);
  const auto arcs = reconstruct::reconstruct(p, s);
  double worst = 0.0;
  for (const auto& a : arcs) worst = std::max(worst, round_trip(p, a.state, tof));
  const bool mirrored = arcs.size() == 2 && arcs[0].orientation == -arcs[1].orientation;
  return {counts && mirrored && worst <= tol::kRoundTrip,
          fmt("census {direct %.0f, indirect %.0f}; %.0f mirror arcs, worst arrival ", census.rows[0].direct,
              census.rows[0].indirect, static_cast<double>(arcs.size())) +
              fmt("%.2e rA", worst)};
}

// ---- 10 ----------------------------------------------------------------------
Outcome limits() {
  const double xa = 2.0, xb = 1.0;
  const double ve = rectilinear::escape_velocity(xa);
  const double fast_d = rectilinear::tof_direct({xa, xb, -1e3});
  const double fast_i = rectilinear::tof_indirect({xa, xb, -1e3});
  const double slow_d = rectilinear::tof_direct({xa, xb, ve - 1e-9});
  const double slow_i = rectilinear::tof_indirect({xa, xb, ve - 1e-9});
  const bool pass = fast_d <= tol::kFastLimit * (xa - xb) / 1e3 &&
                    fast_i <= tol::kFastLimit * (xa + xb) / 1e3 && slow_d > tol::kSlowLimit &&
                    slow_i > tol::kSlowLimit;
  std::ostringstream d;
  d << "T_D(-1e3) = " << fast_d << ", T_I(-1e3) = " << fast_i << ", T_D(vE-1e-9) = " << slow_d
    << ", T_I(vE-1e-9) = " << slow_i;
  return {pass, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "closed-form anchors", closed_form_anchors},
      {2, "Lambert-theorem equivalence", lambert_equivalence},
      {3, "monotonicity and convexity", monotone_convex},
      {4, "indirect non-convexity", indirect_nonconvexity},
      {5, "uniqueness and counts", uniqueness_and_counts},
      {6, "T_min certification", tmin_certification},
      {7, "beta_hat invariance", beta_hat_invariance},
      {8, "propagator self-checks", propagator_self_checks},
      {9, "O on the segment AB", degenerate_segment},
      {10, "limits", limits},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s  %-28s %s (%.2fs)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), secs);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 10 criteria passed in %.1fs\n", 10 - failures, total);
  return failures == 0 ? 0 : 1;
}
