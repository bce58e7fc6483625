// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "monobvp/analysis.hpp"
#include "monobvp/dependence.hpp"
#include "monobvp/error.hpp"
#include "monobvp/problems.hpp"
#include "monobvp/random.hpp"
#include "monobvp/reference.hpp"
#include "monobvp/solver.hpp"

using namespace monobvp;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

/// Every solution computed by the suite, for the unconditional inequality chain.
struct ChainLedger {
  int solutions = 0;
  int checks = 0;
  std::vector<std::string> failures;
  double worst_relative_excess = -1.0;

  void record(const MeshFunction& x) {
    ++solutions;
    for (const auto& c : inequality_chain(x)) {
      ++checks;
      const double excess = (c.lhs - c.rhs) / std::max(1.0, std::abs(c.rhs));
      worst_relative_excess = std::max(worst_relative_excess, excess);
      if (!c.passed) failures.push_back(c.name + " at n=" + std::to_string(x.grid().n()));
    }
  }
};

ChainLedger ledger;

Solution solve_recorded(const DiscreteProblem& p, const SolverOptions& opts = {},
                        const std::optional<MeshFunction>& initial = std::nullopt) {
  Solution s = solve(p, opts, initial);
  ledger.record(s.x);
  return s;
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

/// Smooth forcing vanishing at both ends: a random combination of five sine modes.
RhsFunction random_smooth_rhs(Rng& rng, const std::string& id) {
  std::vector<double> a(5);
  for (double& c : a) c = rng.uniform(-10.0, 10.0);
  auto eval = [a](double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::sin((j + 1.0) * kPi * t);
    return s;
  };
  auto deriv = [a](double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * (j + 1.0) * kPi * std::cos((j + 1.0) * kPi * t);
    return s;
  };
  return RhsFunction{id, eval, deriv, std::nullopt};
}

MeshFunction random_element(const Grid& g, Rng& rng, double amplitude) {
  std::vector<double> v(static_cast<std::size_t>(g.interior_size()));
  for (double& e : v) e = rng.uniform(-amplitude, amplitude);
  return MeshFunction::from_interior(g, v);
}

/// v-independent registry entries claimed monotone in x (zero and linear among them).
std::vector<std::string> monotone_v_independent() {
  std::vector<std::string> ids;
  for (const auto& id : nonlinearity_ids()) {
    const auto f = builtin_nonlinearity(id);
    if (f.monotone_in_x && !f.depends_on_v) ids.push_back(id);
  }
  return ids;
}

const std::vector<int> kSweep{16, 32, 64, 128, 256, 512};

Outcome zero_forcing_exactness() {
  int cases = 0;
  for (const auto& id : nonlinearity_ids()) {
    for (const auto& g : coefficient_ids()) {
      const auto f = builtin_nonlinearity(id, Coefficients{g, g});
      for (int n : {2, 17, 64}) {
        for (Method m : {Method::PreconditionedDescent, Method::Newton, Method::Hybrid}) {
          SolverOptions o;
          o.method = m;
          const Solution s = solve_recorded(DiscreteProblem(f, builtin_rhs("zero"), Grid(n)), o);
          ++cases;
          const bool zero = std::all_of(s.x.values().begin(), s.x.values().end(), [](double v) { return v == 0.0; });
          if (!zero || s.certificate != 0.0 || !s.converged)
            return {false, id + " (g=" + g + ") n=" + std::to_string(n) + " gave a nonzero solution or certificate"};
        }
      }
    }
  }
  return {true, std::to_string(cases) + " (f, g, n, method) cases returned x = 0 with certificate exactly 0"};
}

struct SweepResult {
  std::vector<std::pair<double, double>> e_x, e_v, sqrt_n_norm, ogr;
};

SweepResult manufactured_sweep(const Nonlinearity& f) {
  const auto [h, exact] = manufactured(builtin_exact("sin"), f);
  SweepResult r;
  for (int n : kSweep) {
    const DiscreteProblem p(f, h, Grid(n));
    const Solution s = solve_recorded(p);
    if (!s.converged) throw Error("sweep solve did not converge at n=" + std::to_string(n));
    const ErrorPair e = grid_errors(s.x, exact);
    const BoundReport b = bound_report(p, s.x);
    r.e_x.emplace_back(n, e.e_x);
    r.e_v.emplace_back(n, e.e_v);
    r.sqrt_n_norm.emplace_back(n, b.sqrt_n_norm_e());
    r.ogr.emplace_back(n, b.claimed_norm_ratio);
  }
  return r;
}

Outcome linear_convergence() {
  const SweepResult r = manufactured_sweep(builtin_nonlinearity("linear"));
  const double sx = fit_rate(r.e_x).slope, sv = fit_rate(r.e_v).slope;
  const double last = r.e_x.back().second;
  const bool ok = sx <= -1.9 && sv <= -0.9 && last <= 1e-4;
  return {ok, "e_x slope " + fmt(sx) + " (<= -1.9), e_v slope " + fmt(sv) + " (<= -0.9), e_x(512) " + fmt(last) +
                  " (<= 1e-4)"};
}

bool strictly_decreasing(const std::vector<std::pair<double, double>>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i].second < pts[i - 1].second)) return false;
  return true;
}

Outcome derivative_convergence() {
  const auto f = builtin_nonlinearity("2.4-b");
  const SweepResult r = manufactured_sweep(f);
  const double sx = fit_rate(r.e_x).slope, sv = fit_rate(r.e_v).slope;
  const double last_v = r.e_v.back().second;
  const bool dec = strictly_decreasing(r.e_x) && strictly_decreasing(r.e_v);

  // Independent confirmation of the manufactured solution by two oracles.
  const auto [h, exact] = manufactured(builtin_exact("sin"), f);
  const ReferenceSolution shot = shooting(f, h);
  const Solution fine = solve_recorded(DiscreteProblem(f, h, Grid(8192)));
  const Solution half = solve_recorded(DiscreteProblem(f, h, Grid(4096)));
  double shot_vs_exact = 0.0, extrap_vs_shot = 0.0, raw_vs_shot = 0.0;
  for (int k = 0; k <= 4096; ++k) {
    const double t = Grid(4096).node(k);
    shot_vs_exact = std::max(shot_vs_exact, std::abs(shot.x(t) - exact.x(t)));
    extrap_vs_shot = std::max(extrap_vs_shot, std::abs(2.0 * fine.x[2 * k] - half.x[k] - shot.x(t)));
    raw_vs_shot = std::max(raw_vs_shot, std::abs(fine.x[2 * k] - shot.x(t)));
  }
  const bool oracle = shot_vs_exact <= 1e-5 && extrap_vs_shot <= 1e-5;
  const bool ok = dec && sx <= -0.9 && sv <= -0.9 && last_v <= 1e-2 && oracle;
  return {ok, std::string(dec ? "errors decrease" : "errors NOT monotone") + ", e_x slope " + fmt(sx) +
                  ", e_v slope " + fmt(sv) + " (<= -0.9), e_v(512) " + fmt(last_v) + " (<= 1e-2); oracles: shooting " +
                  "vs exact " + fmt(shot_vs_exact, 2) + ", extrapolated fine grid vs shooting " +
                  fmt(extrap_vs_shot, 2) + " (<= 1e-5; raw n=8192 gap " + fmt(raw_vs_shot, 2) + ")"};
}

Outcome strong_monotonicity() {
  const Grid g(32);
  const int trials = 2000;
  std::string detail;
  bool ok = true;
  for (const auto& id : monotone_v_independent()) {
    const ProbeReport r = probe_operator_monotonicity(builtin_nonlinearity(id), g, trials, 2024);
    ok = ok && r.min_value >= 1.0 - 1e-10;
    detail += (detail.empty() ? "" : ", ") + id + " " + fmt(r.min_value, 12);
  }
  return {ok, "min ratio over " + std::to_string(trials) + " pairs at n=32: " + detail + " (>= 1 - 1e-10)"};
}

Outcome lipschitz_inverse() {
  Rng rng(55);
  const Grid g(64);
  const auto f = builtin_nonlinearity("linear");
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const RhsFunction h1 = random_smooth_rhs(rng, "h1"), h2 = random_smooth_rhs(rng, "h2");
    worst = std::max(worst, lipschitz_inverse_check(f, h1, h2, g));
  }
  return {worst <= 1.0 + 1e-8, "max ratio over 100 random pairs at n=64: " + fmt(worst, 12) + " (<= 1 + 1e-8)"};
}

Outcome certificate_soundness() {
  Rng rng(66);
  const std::vector<std::string> families = monotone_v_independent();
  const std::vector<int> sizes{8, 24, 64, 100, 200};
  int problems = 0;
  double worst_margin = -1e300;  // max of error - certificate
  for (const auto& id : families) {
    for (int n : sizes) {
      if (problems == 20) break;
      const DiscreteProblem p(builtin_nonlinearity(id), random_smooth_rhs(rng, "random"), Grid(n));
      SolverOptions tight;
      tight.tol_cert = 1e-13;
      const Solution best = solve_recorded(p, tight);
      // A rough iterate: a few descent steps from a random start.
      SolverOptions rough;
      rough.method = Method::PreconditionedDescent;
      rough.max_iterations = 3;
      const Solution approx = solve_recorded(p, rough, random_element(p.grid, rng, 1.0));
      const double err = norm_e(approx.x - best.x);
      worst_margin = std::max(worst_margin, err - certificate(p, approx.x));
      ++problems;
    }
  }
  const bool ok = problems == 20 && worst_margin <= 1e-12;
  return {ok, std::to_string(problems) + " problems, max(error - certificate) = " + fmt(worst_margin, 3) +
                  " (<= 1e-12)"};
}

Outcome scaling_diagnostic() {
  const SweepResult r = manufactured_sweep(builtin_nonlinearity("linear"));
  const double target = kPi / std::sqrt(2.0);
  double worst = 0.0;
  for (const auto& [n, v] : r.sqrt_n_norm)
    if (n >= 128) worst = std::max(worst, std::abs(v / target - 1.0));
  const RateFit ogr = fit_rate(r.ogr);
  std::optional<int> first_violation;
  for (const auto& [n, ratio] : r.ogr)
    if (ratio > 1.0 && !first_violation) first_violation = static_cast<int>(n);
  std::string finding = first_violation ? "the n^{-3/2} norm bound fails from n=" + std::to_string(*first_violation)
                                        : "the n^{-3/2} norm bound holds on the sweep";
  finding += " (ogr_ratio " + fmt(r.ogr.front().second) + " -> " + fmt(r.ogr.back().second) + ", fitted exponent " +
             fmt(ogr.slope) + ")";
  return {worst <= 0.05, "sqrt(n)|x|_E within " + fmt(100 * worst, 3) + "% of pi/sqrt(2) for n >= 128 (<= 5%); finding: " +
                             finding};
}

Outcome continuous_dependence() {
  const Grid g(2048);
  const std::vector<int> ms{1, 2, 4, 8};
  const auto rows = dependence_experiment(builtin_nonlinearity("linear"), WeakFamily{builtin_rhs("linear-sin"), 1.0},
                                          ms, g);
  double worst = 0.0;
  std::vector<std::pair<double, double>> decay;
  for (const auto& row : rows) {
    if (!row.m) continue;
    const double m = *row.m;
    const double closed = 1.0 / (m * kPi * (m * m * kPi * kPi + 1.0));
    worst = std::max(worst, std::abs(row.sup_gap / closed - 1.0));
    decay.emplace_back(m, row.sup_gap);
  }
  const double slope = fit_rate(decay).slope;
  return {worst <= 0.05 && slope <= -2.5, "sup_gap(1) " + fmt(rows[0].sup_gap, 6) + ", sup_gap(2) " +
                                              fmt(rows[1].sup_gap, 6) + ", max relative deviation " +
                                              fmt(100 * worst, 3) + "% (<= 5%), decay slope " + fmt(slope) +
                                              " (<= -2.5)"};
}

Outcome oracle_triangulation() {
  const auto f = builtin_nonlinearity("linear");
  const RhsFunction h = builtin_rhs("linear-sin");
  const ReferenceSolution shot = shooting(f, h);
  const ReferenceSolution fine = fine_grid(f, h, 8192);
  const InterpolantPair direct(linear_direct(1.0, h, Grid(8192)));
  double sf = 0.0, sd = 0.0, fd = 0.0;
  constexpr int kSamples = 3 * 8192;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = static_cast<double>(i) / kSamples;
    const double a = shot.x(t), b = fine.x(t), c = direct.x_bar(t);
    sf = std::max(sf, std::abs(a - b));
    sd = std::max(sd, std::abs(a - c));
    fd = std::max(fd, std::abs(b - c));
  }
  const bool ok = sf <= 1e-5 && sd <= 1e-5 && fd <= 1e-5;
  return {ok, "sup gaps: shooting/fine-grid " + fmt(sf, 3) + ", shooting/direct " + fmt(sd, 3) + ", fine-grid/direct " +
                  fmt(fd, 3) + " (<= 1e-5)"};
}

Outcome uniqueness() {
  Rng rng(77);
  SolverOptions opts;
  const double tol = opts.tol_cert;
  double worst = 0.0;
  int problems = 0;
  for (const char* id : {"zero", "linear", "cubic", "arctan", "2.4-b"}) {
    for (const char* hid : {"sin", "mixed"}) {
      const DiscreteProblem p(builtin_nonlinearity(id), builtin_rhs(hid), Grid(64));
      std::vector<MeshFunction> finals;
      for (int i = 0; i < 5; ++i) {
        const Solution s = solve_recorded(p, opts, random_element(p.grid, rng, 5.0));
        if (!s.converged) return {false, std::string(id) + ": a solve did not converge"};
        finals.push_back(s.x);
      }
      for (std::size_t a = 0; a < finals.size(); ++a)
        for (std::size_t b = a + 1; b < finals.size(); ++b) worst = std::max(worst, norm_e(finals[a] - finals[b]));
      ++problems;
    }
  }
  return {worst <= 10.0 * tol, std::to_string(problems) + " problems x 5 random starts, max pairwise |x_i - x_j|_E " +
                                   fmt(worst, 3) + " (<= " + fmt(10.0 * tol, 2) + ")"};
}

Outcome inequality_suite() {
  const bool ok = ledger.failures.empty() && ledger.solutions > 0;
  std::string detail = std::to_string(ledger.solutions) + " computed solutions, " + std::to_string(ledger.checks) +
                       " checks, worst relative excess " + fmt(ledger.worst_relative_excess, 3) + " (<= 1e-10)";
  if (!ok && !ledger.failures.empty()) detail += "; first failure: " + ledger.failures.front();
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  // The inequality suite runs last so it covers every solution computed above.
  const std::vector<Criterion> criteria{
      {1, "zero forcing gives the zero solution", zero_forcing_exactness},
      {2, "linear manufactured convergence", linear_convergence},
      {3, "derivative convergence for the affine family", derivative_convergence},
      {4, "strong monotonicity of the discrete operator", strong_monotonicity},
      {5, "Lipschitz continuity of the inverse", lipschitz_inverse},
      {6, "certificate soundness", certificate_soundness},
      {8, "sqrt(n) scaling of the E-norm", scaling_diagnostic},
      {9, "continuous dependence on weakly convergent forcing", continuous_dependence},
      {10, "oracle triangulation", oracle_triangulation},
      {11, "uniqueness from random initial iterates", uniqueness},
      {7, "unconditional inequality chain", inequality_suite},
  };

  std::vector<std::pair<int, std::string>> lines;
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    lines.emplace_back(c.id, std::string(o.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(c.id) + " (" +
                                 c.title + "): " + o.detail);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::cout << line << '\n';
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
