#include "lambert/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "lambert/error.hpp"

namespace lambert::quadrature {
namespace {

// Kronrod abscissae on [0, 1); odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

// QUADPACK qk15 error heuristic.
Segment rule15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);

  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_kronrod = std::abs(kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_kronrod += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j)
    asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double value = kronrod * half;
  abs_kronrod *= std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_kronrod > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * abs_kronrod, err);
  return {a, b, value, err};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Tolerance& tol) {
  return integrate(f, a, b, {}, tol);
}

Result integrate(const Integrand& f, double a, double b,
                 std::initializer_list<double> breakpoints, const Tolerance& tol) {
  Result out;
  if (a == b) return out;

  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if ((p - a) * (b - p) > 0.0) cuts.push_back(p);
  cuts.push_back(b);
  if (a < b)
    std::sort(cuts.begin(), cuts.end());
  else
    std::sort(cuts.begin(), cuts.end(), std::greater<>());

  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] == cuts[i + 1]) continue;
    Segment s = rule15(f, cuts[i], cuts[i + 1]);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  out.evaluations = 15 * heap.size();

  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Segments too narrow to bisect are retired; their error stays in the sum.
  double retired_err = 0.0;
  double retired_value = 0.0;
  while (!heap.empty()) {
    const double target = std::max(tol.absolute, tol.relative * std::abs(total));
    if (total_err <= target) break;
    if (heap.size() + 1 > tol.max_subintervals) {
      std::ostringstream msg;
      msg << "subinterval budget exhausted on [" << a << ", " << b << "], estimate " << total
          << " +/- " << total_err;
      throw Error(ErrorCode::QuadratureFailure, msg.str());
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = std::abs(worst.b - worst.a);
    if (width <= 100.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      retired_err += worst.error;
      retired_value += worst.value;
      if (retired_err > target) {
        throw Error(ErrorCode::QuadratureFailure, "roundoff limits the attainable accuracy");
      }
      continue;
    }
    Segment left = rule15(f, worst.a, mid);
    Segment right = rule15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift from incremental updates.
  double sum = retired_value;
  double err = retired_err;
  out.subintervals = heap.size();
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = err;
  return out;
}

}  // namespace lambert::quadrature
