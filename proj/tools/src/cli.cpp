#include "lambert_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lambert/error.hpp"
#include "lambert/geometry.hpp"
#include "lambert/maps.hpp"
#include "lambert/propagator.hpp"
#include "lambert/reconstruct.hpp"
#include "lambert/rectilinear.hpp"
#include "lambert/solver.hpp"

namespace lambert::cli {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr double kVerifyTolerance = 1e-8;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scalar flag whose presence matters.
struct Scalar {
  double value = 0.0;
  CLI::Option* opt = nullptr;
  bool given() const { return opt != nullptr && opt->count() > 0; }
};

struct Options {
  Scalar ax, ay, bx, by, ra, rb, theta, chord, xa, xb, tof, vmin, vmax;
  bool rectilinear = false;
  double mu = 1.0;
  std::string cls = "all";
  int revs = 0;
  CLI::Option* revs_opt = nullptr;
  int nmax = 0;
  std::string format;
  bool compact = false;
  std::string out_path;
  std::string batch;
  std::string param = "va";
  int samples = 401;
  int grid = solver::kDefaultSamples;
};

struct Problem {
  std::optional<BoundaryProblem> planar;
  RectilinearEquivalent re;
  std::string mode;
};

// Internal units have mu = 1: lengths are shared, times scale by 1/sqrt(mu).
struct Units {
  double mu = 1.0;
  double time(double t) const { return t / std::sqrt(mu); }
  double speed(double v) const { return v * std::sqrt(mu); }
  double energy(double h) const { return h * mu; }
};

void add_input(CLI::App* sub, Options& o) {
  auto add = [&](const char* name, Scalar& s, const char* help) {
    s.opt = sub->add_option(name, s.value, help)->group("Problem");
  };
  add("--ax", o.ax, "x of A (cartesian input)");
  add("--ay", o.ay, "y of A (cartesian input)");
  add("--bx", o.bx, "x of B (cartesian input)");
  add("--by", o.by, "y of B (cartesian input)");
  add("--ra", o.ra, "|OA| (triangle input)");
  add("--rb", o.rb, "|OB| (triangle input)");
  add("--theta", o.theta, "counterclockwise transfer angle in radians, in (0, 2 pi)");
  add("--chord", o.chord, "|AB| (triangle input, instead of --theta)");
  add("--xa", o.xa, "outer end of the rectilinear image");
  add("--xb", o.xb, "inner end of the rectilinear image");
  sub->add_flag("--rectilinear", o.rectilinear, "input is the rectilinear image (xa, xb)")
      ->group("Problem");
  sub->add_option("--mu", o.mu, "gravitational parameter")
      ->check(CLI::PositiveNumber)
      ->group("Problem");
}

void add_output(CLI::App* sub, Options& o, const char* default_format) {
  o.format = default_format;
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str()
      ->group("Output");
  sub->add_flag("--compact", o.compact, "single-line JSON")->group("Output");
  sub->add_option("--out", o.out_path, "write the report to this file")->group("Output");
  sub->add_option("--batch", o.batch,
                  "file with one argument list per line, run concurrently")
      ->group("Output");
}

void add_selection(CLI::App* sub, Options& o) {
  sub->add_option("--class", o.cls, "arc class")
      ->check(CLI::IsMember({"direct", "indirect", "all"}))
      ->capture_default_str();
  o.revs_opt = sub->add_option("--revs", o.revs, "only this revolution count")
                   ->check(CLI::NonNegativeNumber);
  sub->add_option("--nmax", o.nmax, "largest revolution count (ignored with --revs)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--grid", o.grid, "samples for indirect multi-revolution searches")
      ->check(CLI::Range(8, 1 << 22))
      ->capture_default_str();
}

Problem build_problem(const Options& o) {
  const bool cart = o.ax.given() || o.ay.given() || o.bx.given() || o.by.given();
  const bool tri = o.ra.given() || o.rb.given() || o.theta.given() || o.chord.given();
  const bool rect = o.rectilinear || o.xa.given() || o.xb.given();
  if (int(cart) + int(tri) + int(rect) != 1)
    throw InputError(
        "give exactly one input mode: --ax --ay --bx --by, --ra --rb with --theta or "
        "--chord, or --xa --xb --rectilinear");
  Problem pr;
  if (cart) {
    if (!(o.ax.given() && o.ay.given() && o.bx.given() && o.by.given()))
      throw InputError("cartesian input needs --ax --ay --bx --by");
    pr.planar = BoundaryProblem({o.ax.value, o.ay.value}, {o.bx.value, o.by.value});
    pr.mode = "cartesian";
  } else if (tri) {
    if (!(o.ra.given() && o.rb.given())) throw InputError("triangle input needs --ra and --rb");
    if (o.theta.given() == o.chord.given())
      throw InputError("triangle input needs exactly one of --theta and --chord");
    if (o.theta.given()) {
      const double t = o.theta.value;
      if (!(t > 0.0 && t < 2.0 * M_PI)) throw InputError("--theta must lie in (0, 2 pi)");
      pr.planar = BoundaryProblem::from_triangle(o.ra.value, o.rb.value, t);
    } else {
      pr.planar = BoundaryProblem::from_sides(o.ra.value, o.rb.value, o.chord.value);
    }
    pr.mode = "triangle";
  } else {
    if (!(o.xa.given() && o.xb.given())) throw InputError("rectilinear input needs --xa and --xb");
    const double xa = o.xa.value;
    const double xb = o.xb.value;
    if (!(xa > 0.0 && xb >= 0.0 && xb < xa))
      throw InputError("rectilinear input needs 0 <= xb < xa");
    pr.re = {xa, xb};
    // Both ends on one ray reproduce the image exactly; xb = 0 has no
    // planar counterpart with B off the center.
    if (xb > 0.0) pr.planar = BoundaryProblem({xa, 0.0}, {xb, 0.0});
    pr.mode = "rectilinear";
    return pr;
  }
  pr.re = reduce_to_rectilinear(*pr.planar);
  return pr;
}

double internal_tof(const Options& o) {
  if (!o.tof.given()) throw InputError("--tof is required");
  if (!(std::isfinite(o.tof.value) && o.tof.value > 0.0))
    throw InputError("--tof must be positive and finite");
  return o.tof.value * std::sqrt(o.mu);
}

json problem_json(const Problem& pr) {
  json j;
  j["mode"] = pr.mode;
  j["xa"] = pr.re.xa;
  j["xb"] = pr.re.xb;
  if (pr.planar) {
    const auto& p = *pr.planar;
    j["a"] = {p.pos_a().x, p.pos_a().y};
    j["b"] = {p.pos_b().x, p.pos_b().y};
    j["transferAngle"] = p.transfer_angle();
    j["chord"] = p.chord();
  }
  return j;
}

struct Selection {
  bool direct = true;
  bool indirect = true;
  bool explicit_direct = false;
  int n_lo = 0;
  int n_hi = 0;
};

Selection selection(const Options& o) {
  Selection s;
  s.direct = o.cls != "indirect";
  s.indirect = o.cls != "direct";
  s.explicit_direct = o.cls == "direct";
  if (o.revs_opt != nullptr && o.revs_opt->count() > 0) {
    s.n_lo = s.n_hi = o.revs;
  } else {
    s.n_hi = o.nmax;
  }
  return s;
}

std::vector<LambertSolution> collect(const RectilinearEquivalent& re, double tof,
                                     const Selection& sel, int grid) {
  if (re.degenerate() && sel.explicit_direct)
    throw Error(ErrorCode::DegenerateDirect, "O lies on the segment AB: only indirect arcs exist");
  const bool direct = sel.direct && !re.degenerate();
  std::vector<LambertSolution> out;
  for (int n = sel.n_lo; n <= sel.n_hi; ++n) {
    if (n == 0) {
      if (direct) out.push_back(solver::solve_simple(re, tof, Tail::Direct));
      if (sel.indirect) out.push_back(solver::solve_simple(re, tof, Tail::Indirect));
      continue;
    }
    if (direct)
      for (auto& s : solver::solve_multirev(re, n, tof)) out.push_back(s);
    if (sel.indirect)
      for (auto& s : solver::solve_multirev_indirect(re, n, tof, grid)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const LambertSolution& a, const LambertSolution& b) {
    return std::tuple(a.arc_class.revs, a.arc_class.tail, a.va) <
           std::tuple(b.arc_class.revs, b.arc_class.tail, b.va);
  });
  return out;
}

json class_json(const ArcClass& c) {
  return {{"kind", to_string(c.kind)}, {"revs", c.revs}, {"tail", to_string(c.tail)}};
}

json state_json(const reconstruct::Arc& arc, const Units& u) {
  return {{"position", {arc.state.pos.x, arc.state.pos.y}},
          {"velocity", {u.speed(arc.state.vel.x), u.speed(arc.state.vel.y)}},
          {"orientation", arc.orientation}};
}

json solution_json(const LambertSolution& s, const std::vector<reconstruct::Arc>& arcs,
                   const Units& u) {
  json j;
  j["arcClass"] = class_json(s.arc_class);
  j["vA"] = u.speed(s.va);
  j["eta"] = s.eta;
  j["betaHat"] = s.beta_hat;
  j["H"] = u.energy(s.energy);
  j["tof"] = u.time(s.tof);
  j["tofResidual"] = s.tof_residual;
  j["certified"] = s.certified;
  j["iterations"] = s.iterations;
  j["multiplicity"] = s.multiplicity;
  json states = json::array();
  for (const auto& a : arcs) states.push_back(state_json(a, u));
  j["initialStates"] = states;
  return j;
}

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void write_json(std::ostream& out, const json& j, bool compact) {
  out << (compact ? j.dump() : j.dump(2)) << '\n';
}

// ---- solve -----------------------------------------------------------------

int cmd_solve(const Options& o, std::ostream& out) {
  const Problem pr = build_problem(o);
  const double tof = internal_tof(o);
  const Units u{o.mu};
  const auto sols = collect(pr.re, tof, selection(o), o.grid);
  std::vector<std::vector<reconstruct::Arc>> arcs;
  for (const auto& s : sols)
    arcs.push_back(pr.planar ? reconstruct::reconstruct(*pr.planar, s)
                             : std::vector<reconstruct::Arc>{});

  if (o.format == "json") {
    json j;
    j["schemaVersion"] = kSchemaVersion;
    j["command"] = "solve";
    j["mu"] = o.mu;
    j["problem"] = problem_json(pr);
    j["tof"] = o.tof.value;
    json list = json::array();
    for (std::size_t i = 0; i < sols.size(); ++i) list.push_back(solution_json(sols[i], arcs[i], u));
    j["solutions"] = list;
    write_json(out, j, o.compact);
  } else if (o.format == "csv") {
    out << "revs,tail,kind,arc,va,eta,beta_hat,energy,tof,tof_residual,certified,multiplicity,vx,vy\n";
    for (std::size_t i = 0; i < sols.size(); ++i) {
      const auto& s = sols[i];
      const std::string head = std::to_string(s.arc_class.revs) + ',' +
                               std::string(to_string(s.arc_class.tail)) + ',' +
                               std::string(to_string(s.arc_class.kind)) + ',';
      const std::string tail = num(u.speed(s.va)) + ',' + num(s.eta) + ',' + num(s.beta_hat) +
                               ',' + num(u.energy(s.energy)) + ',' + num(u.time(s.tof)) + ',' +
                               num(s.tof_residual) + ',' + (s.certified ? "true" : "false") + ',' +
                               std::to_string(s.multiplicity) + ',';
      if (arcs[i].empty()) out << head << ',' << tail << ",\n";
      for (std::size_t k = 0; k < arcs[i].size(); ++k)
        out << head << k << ',' << tail << num(u.speed(arcs[i][k].state.vel.x)) << ','
            << num(u.speed(arcs[i][k].state.vel.y)) << '\n';
    }
  } else {
    out << "problem (" << pr.mode << "): xa = " << pr.re.xa << ", xb = " << pr.re.xb
        << ", tof = " << o.tof.value << '\n';
    out << std::left << std::setw(4) << "n" << std::setw(10) << "tail" << std::setw(20) << "vA"
        << std::setw(20) << "eta" << std::setw(20) << "H" << std::setw(12) << "residual"
        << "certified\n";
    out << std::setprecision(12);
    for (const auto& s : sols) {
      out << std::setw(4) << s.arc_class.revs << std::setw(10) << to_string(s.arc_class.tail)
          << std::setw(20) << u.speed(s.va) << std::setw(20) << s.eta << std::setw(20)
          << u.energy(s.energy) << std::setw(12) << std::setprecision(2) << s.tof_residual
          << std::setprecision(12) << (s.certified ? "yes" : "no")
          << (s.multiplicity > 1 ? "  (x2 mirror pair)" : "") << '\n';
    }
    if (sols.empty()) out << "no solutions\n";
  }
  return sols.empty() ? kEmptyResult : kOk;
}

// ---- count -----------------------------------------------------------------

int cmd_count(const Options& o, std::ostream& out) {
  const Problem pr = build_problem(o);
  const double tof = internal_tof(o);
  const solver::Census census = solver::count_solutions(pr.re, tof, o.nmax);
  if (o.format == "json") {
    json j;
    j["schemaVersion"] = kSchemaVersion;
    j["command"] = "count";
    j["mu"] = o.mu;
    j["problem"] = problem_json(pr);
    j["tof"] = o.tof.value;
    j["nMax"] = o.nmax;
    json rows = json::array();
    for (const auto& r : census.rows)
      rows.push_back({{"revs", r.revs},
                      {"direct", r.direct},
                      {"indirect", r.indirect},
                      {"directApplicable", r.direct_applicable},
                      {"directCertified", r.direct_certified},
                      {"indirectCertified", r.indirect_certified},
                      {"indirectInconclusive", r.indirect_inconclusive}});
    j["rows"] = rows;
    j["total"] = census.total();
    write_json(out, j, o.compact);
  } else if (o.format == "csv") {
    out << "revs,direct,indirect,direct_certified,indirect_certified,indirect_inconclusive\n";
    for (const auto& r : census.rows)
      out << r.revs << ',' << r.direct << ',' << r.indirect << ','
          << (r.direct_certified ? "true" : "false") << ','
          << (r.indirect_certified ? "true" : "false") << ','
          << (r.indirect_inconclusive ? "true" : "false") << '\n';
  } else {
    out << std::left << std::setw(6) << "n" << std::setw(10) << "direct" << "indirect\n";
    for (const auto& r : census.rows) {
      out << std::setw(6) << r.revs;
      out << std::setw(10) << (r.direct_applicable ? std::to_string(r.direct) : "-");
      out << r.indirect;
      if (r.indirect_inconclusive) out << " (inconclusive)";
      else if (!r.indirect_certified) out << " (uncertified)";
      out << '\n';
    }
    out << "total " << census.total() << '\n';
  }
  return kOk;
}

// ---- curve -----------------------------------------------------------------

struct CurvePoint {
  double value, va, lb_x, tof;
  std::optional<double> d1, d2;
};

std::vector<CurvePoint> sample_curve(const RectilinearEquivalent& re, Tail tail, int revs,
                                     const std::string& param, double vmin, double vmax,
                                     int samples, const Units& u) {
  const bool direct = tail == Tail::Direct;
  auto eta_of = [&](double va) {
    return direct ? maps::eta_from_va_direct(va, re.xa, re.xb)
                  : maps::eta_from_va_indirect(va, re.xa, re.xb);
  };
  auto va_of = [&](double eta) {
    return direct ? maps::va_from_eta_direct(eta, re.xa, re.xb)
                  : maps::va_from_eta_indirect(eta, re.xa, re.xb);
  };
  double lo = vmin;
  double hi = vmax;
  if (param != "va") {
    lo = eta_of(vmin);
    hi = eta_of(vmax);
    if (lo > hi) std::swap(lo, hi);
  }
  const double ve = rectilinear::escape_velocity(re.xa);
  std::vector<CurvePoint> pts(samples);
  for (int i = 0; i < samples; ++i) {
    const double value = lo + (hi - lo) * i / (samples - 1);
    const double va = param == "va" ? value : va_of(value);
    const rectilinear::ArcQuery q{re.xa, re.xb, va};
    double t = direct ? rectilinear::tof_direct(q) : rectilinear::tof_indirect(q);
    if (revs > 0) t += revs * rectilinear::period(va, re.xa);
    pts[i] = {param == "va" ? u.speed(value) : value, u.speed(va), va / ve, u.time(t), {}, {}};
  }
  for (int i = 1; i + 1 < samples; ++i) {
    const double h = pts[i + 1].value - pts[i].value;
    pts[i].d1 = (pts[i + 1].tof - pts[i - 1].tof) / (2.0 * h);
    pts[i].d2 = (pts[i + 1].tof - 2.0 * pts[i].tof + pts[i - 1].tof) / (h * h);
  }
  return pts;
}

int cmd_curve(const Options& o, std::ostream& out) {
  const Problem pr = build_problem(o);
  const Units u{o.mu};
  const Selection sel = selection(o);
  if (o.samples < 3) throw InputError("--samples must be at least 3");
  if (pr.re.degenerate() && sel.explicit_direct)
    throw Error(ErrorCode::DegenerateDirect, "O lies on the segment AB: only indirect arcs exist");
  const double ve = rectilinear::escape_velocity(pr.re.xa);
  // User-unit velocity bounds.
  const double vmin = o.vmin.given() ? o.vmin.value / std::sqrt(o.mu) : -3.0 * ve;
  const double vmax = o.vmax.given() ? o.vmax.value / std::sqrt(o.mu) : ve * (1.0 - 1e-3);
  if (!(vmin < vmax)) throw InputError("--vmin must be below --vmax");
  if (!(vmax < ve * (1.0 - rectilinear::kEscapeMargin)))
    throw InputError("--vmax must stay below the escape velocity sqrt(2 mu / xa)");
  const int revs = sel.n_lo;

  std::vector<std::pair<std::string, std::vector<CurvePoint>>> curves;
  if (sel.direct && !pr.re.degenerate())
    curves.emplace_back("direct", sample_curve(pr.re, Tail::Direct, revs, o.param, vmin, vmax,
                                               o.samples, u));
  if (sel.indirect)
    curves.emplace_back("indirect", sample_curve(pr.re, Tail::Indirect, revs, o.param, vmin,
                                                 vmax, o.samples, u));

  if (o.format == "json") {
    json j;
    j["schemaVersion"] = kSchemaVersion;
    j["command"] = "curve";
    j["mu"] = o.mu;
    j["problem"] = problem_json(pr);
    j["revs"] = revs;
    json list = json::array();
    for (const auto& [name, pts] : curves) {
      json points = json::array();
      for (const auto& p : pts)
        points.push_back({{"value", p.value},
                          {"va", p.va},
                          {"lbX", p.lb_x},
                          {"tof", p.tof},
                          {"d1", p.d1 ? json(*p.d1) : json(nullptr)},
                          {"d2", p.d2 ? json(*p.d2) : json(nullptr)}});
      list.push_back({{"class", name}, {"parameter", o.param}, {"points", points}});
    }
    j["curves"] = list;
    write_json(out, j, o.compact);
    return kOk;
  }
  const char sep = o.format == "csv" ? ',' : ' ';
  out << "class" << sep << "parameter" << sep << "value" << sep << "va" << sep << "lb_x" << sep
      << "tof" << sep << "d1" << sep << "d2\n";
  for (const auto& [name, pts] : curves)
    for (const auto& p : pts)
      out << name << sep << o.param << sep << num(p.value) << sep << num(p.va) << sep
          << num(p.lb_x) << sep << num(p.tof) << sep << (p.d1 ? num(*p.d1) : "") << sep
          << (p.d2 ? num(*p.d2) : "") << '\n';
  return kOk;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  const Problem pr = build_problem(o);
  if (!pr.planar) throw InputError("verify needs a planar problem (xb > 0 in rectilinear mode)");
  const double tof = internal_tof(o);
  const Units u{o.mu};
  const auto sols = collect(pr.re, tof, selection(o), o.grid);
  const BoundaryProblem& p = *pr.planar;

  struct Row {
    const LambertSolution* sol;
    int arc;
    bool probed;
    double position_error;  // relative to rA
    double energy_error;    // relative to max(|H|, 1/rA)
    bool pass;
    std::string note;
  };
  std::vector<Row> rows;
  bool all_pass = true;
  for (const auto& s : sols) {
    std::vector<reconstruct::Arc> arcs;
    try {
      arcs = reconstruct::reconstruct(p, s);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InconsistentSolution) throw;
      rows.push_back({&s, 0, true, NAN, NAN, false, e.what()});
      all_pass = false;
      continue;
    }
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      const auto& a = arcs[k];
      const double scale = std::max(std::abs(s.energy), 1.0 / p.r_a());
      const double de = std::abs(kepler::energy(a.state) - s.energy) / scale;
      const bool pass = !a.probed || (a.probe_error <= kVerifyTolerance);
      all_pass = all_pass && pass;
      rows.push_back({&s, static_cast<int>(k), a.probed, a.probe_error, de, pass,
                      a.probed ? "" : "passes through the center; not propagated"});
    }
  }

  if (o.format == "json") {
    json j;
    j["schemaVersion"] = kSchemaVersion;
    j["command"] = "verify";
    j["mu"] = o.mu;
    j["problem"] = problem_json(pr);
    j["tof"] = o.tof.value;
    j["tolerance"] = kVerifyTolerance;
    json list = json::array();
    for (const auto& r : rows) {
      json e = {{"arcClass", class_json(r.sol->arc_class)},
                {"vA", u.speed(r.sol->va)},
                {"arc", r.arc},
                {"probed", r.probed},
                {"positionError", std::isfinite(r.position_error) ? json(r.position_error) : json(nullptr)},
                {"energyError", std::isfinite(r.energy_error) ? json(r.energy_error) : json(nullptr)},
                {"pass", r.pass}};
      if (!r.note.empty()) e["note"] = r.note;
      list.push_back(e);
    }
    j["results"] = list;
    j["allPass"] = all_pass;
    write_json(out, j, o.compact);
  } else if (o.format == "csv") {
    out << "revs,tail,va,arc,probed,position_error,energy_error,pass\n";
    for (const auto& r : rows)
      out << r.sol->arc_class.revs << ',' << to_string(r.sol->arc_class.tail) << ','
          << num(u.speed(r.sol->va)) << ',' << r.arc << ',' << (r.probed ? "true" : "false")
          << ',' << num(r.position_error) << ',' << num(r.energy_error) << ','
          << (r.pass ? "true" : "false") << '\n';
  } else {
    for (const auto& r : rows) {
      out << "n=" << r.sol->arc_class.revs << ' ' << to_string(r.sol->arc_class.tail)
          << " vA=" << num(u.speed(r.sol->va)) << " arc " << r.arc << ": ";
      if (!r.probed)
        out << "skipped (" << r.note << ")\n";
      else
        out << "|r(T)-B|/rA = " << std::setprecision(3) << r.position_error
            << ", dH = " << r.energy_error << (r.pass ? "  ok" : "  FAIL") << '\n';
    }
    if (rows.empty()) out << "no solutions\n";
  }
  if (sols.empty()) return kEmptyResult;
  return all_pass ? kOk : kNumericalFailure;
}

// ---- dispatch --------------------------------------------------------------

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::QuadratureFailure:
    case ErrorCode::NoConvergence:
    case ErrorCode::SamplingInconclusive:
    case ErrorCode::InconsistentSolution:
    case ErrorCode::CollisionWithinInterval:
      return kNumericalFailure;
    default:
      return kInputError;
  }
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

int run_batch(const std::string& command, const Options& o, std::ostream& out,
              std::ostream& err) {
  std::ifstream file(o.batch);
  if (!file) throw InputError("cannot read batch file " + o.batch);
  std::vector<std::vector<std::string>> jobs;
  std::vector<int> line_numbers;
  int number = 0;
  for (std::string line; std::getline(file, line);) {
    ++number;
    auto words = split_words(line);
    if (words.empty() || words.front().front() == '#') continue;
    for (const auto& w : words)
      if (w == "--format" || w == "--out" || w == "--batch" || w == "--compact")
        throw InputError("batch line " + std::to_string(number) + ": " + w +
                         " belongs on the outer command line");
    words.insert(words.begin(), command);
    words.insert(words.end(), {"--format", o.format});
    if (o.format == "json") words.push_back("--compact");
    jobs.push_back(std::move(words));
    line_numbers.push_back(number);
  }

  struct Outcome {
    int code = 0;
    std::string out, err;
  };
  std::vector<Outcome> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      std::ostringstream so, se;
      results[i].code = run(jobs[i], so, se);
      results[i].out = so.str();
      results[i].err = se.str();
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int worst = kOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    worst = std::max(worst, results[i].code);
    if (!results[i].err.empty())
      err << "line " << line_numbers[i] << ": " << results[i].err;
  }
  if (o.format == "json") {
    json j;
    j["schemaVersion"] = kSchemaVersion;
    j["command"] = "batch";
    j["subcommand"] = command;
    json list = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      json e = {{"line", line_numbers[i]}, {"exitCode", results[i].code}};
      e["result"] = results[i].out.empty() ? json(nullptr) : json::parse(results[i].out);
      if (!results[i].err.empty()) e["error"] = results[i].err;
      list.push_back(e);
    }
    j["results"] = list;
    write_json(out, j, o.compact);
  } else {
    for (std::size_t i = 0; i < results.size(); ++i)
      out << "# line " << line_numbers[i] << " exit " << results[i].code << '\n'
          << results[i].out;
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar Lambert problem solver", "lambert"};
  app.require_subcommand(1);
  std::map<std::string, Options> options;

  {
    Options& o = options["solve"];
    CLI::App* sub = app.add_subcommand("solve", "solve for every arc in the requested classes");
    add_input(sub, o);
    o.tof.opt = sub->add_option("--tof", o.tof.value, "elapsed time");
    add_selection(sub, o);
    add_output(sub, o, "json");
  }
  {
    Options& o = options["count"];
    CLI::App* sub = app.add_subcommand("count", "census of solutions by revolution count");
    add_input(sub, o);
    o.tof.opt = sub->add_option("--tof", o.tof.value, "elapsed time");
    sub->add_option("--nmax", o.nmax, "largest revolution count")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_output(sub, o, "json");
  }
  {
    Options& o = options["curve"];
    CLI::App* sub = app.add_subcommand("curve", "sample elapsed time against a parameter");
    add_input(sub, o);
    sub->add_option("--class", o.cls, "arc class")
        ->check(CLI::IsMember({"direct", "indirect", "all"}))
        ->capture_default_str();
    o.revs_opt = sub->add_option("--revs", o.revs, "full revolutions before the final arc")
                     ->check(CLI::NonNegativeNumber);
    sub->add_option("--param", o.param, "abscissa")
        ->check(CLI::IsMember({"va", "eta", "betahat"}))
        ->capture_default_str();
    sub->add_option("--samples", o.samples, "number of points")->capture_default_str();
    o.vmin.opt = sub->add_option("--vmin", o.vmin.value, "lowest va (default -3 v_E)");
    o.vmax.opt = sub->add_option("--vmax", o.vmax.value, "highest va (default 0.999 v_E)");
    add_output(sub, o, "csv");
  }
  {
    Options& o = options["verify"];
    CLI::App* sub = app.add_subcommand("verify", "propagate each solution and report the miss");
    add_input(sub, o);
    o.tof.opt = sub->add_option("--tof", o.tof.value, "elapsed time");
    add_selection(sub, o);
    add_output(sub, o, "human");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const Options& o = options.at(command);

  try {
    if (!o.batch.empty()) return run_batch(command, o, out, err);
    std::ofstream file;
    if (!o.out_path.empty()) {
      file.open(o.out_path);
      if (!file) throw InputError("cannot write " + o.out_path);
    }
    std::ostream& sink = o.out_path.empty() ? out : file;
    if (command == "solve") return cmd_solve(o, sink);
    if (command == "count") return cmd_count(o, sink);
    if (command == "curve") return cmd_curve(o, sink);
    return cmd_verify(o, sink);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace lambert::cli
