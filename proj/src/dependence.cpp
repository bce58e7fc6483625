#include "monobvp/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "monobvp/error.hpp"
#include "monobvp/interpolant.hpp"

namespace monobvp {

namespace {

constexpr double kPi = std::numbers::pi;

Solution solve_converged(const Nonlinearity& f, const RhsFunction& h, const Grid& grid, const SolverOptions& opts) {
  Solution s = solve(DiscreteProblem(f, h, grid), opts);
  if (!s.converged)
    throw Error("solve for '" + h.id + "' did not converge (certificate " + std::to_string(s.certificate) + ")");
  return s;
}

}  // namespace

RhsFunction family_member(const WeakFamily& fam, int m) {
  if (m < 1) throw InvalidArgument("family index must be >= 1");
  const double a = fam.amplitude;
  const double freq = m * kPi;
  const ScalarFn base = fam.h0.eval;
  RhsFunction h;
  h.id = fam.h0.id + "+weak(" + std::to_string(m) + ")";
  h.eval = [base, a, freq](double t) { return base(t) + a / freq * std::sin(freq * t); };
  if (fam.h0.deriv) {
    const ScalarFn base_d = fam.h0.deriv;
    h.deriv = [base_d, a, freq](double t) { return base_d(t) + a * std::cos(freq * t); };
  }
  return h;
}

double h1_norm(const RhsFunction& h) {
  ScalarFn d = h.deriv;
  if (!d) {
    const ScalarFn e = h.eval;
    d = [e](double t) {
      constexpr double step = 1e-6;
      return (e(t + step) - e(t - step)) / (2 * step);
    };
  }
  constexpr int kCells = 20000;
  const double w = 1.0 / kCells;
  double sum = 0.0;
  for (int i = 0; i < kCells; ++i) {
    const double a = i * w;
    const double fa = d(a), fm = d(a + 0.5 * w), fb = d(a + w);
    sum += w / 6.0 * (fa * fa + 4.0 * fm * fm + fb * fb);
  }
  return std::sqrt(sum);
}

std::vector<DependenceRow> dependence_experiment(const Nonlinearity& f, const WeakFamily& fam,
                                                 const std::vector<int>& m_list, const Grid& grid_ref,
                                                 const SolverOptions& opts) {
  if (!f.affine)
    throw MissingCapability("nonlinearity '" + f.id +
                            "' lacks the affine structure f(t, v, x) = f1(t, x) + v g(t)");
  const Solution base = solve_converged(f, fam.h0, grid_ref, opts);

  std::vector<int> ms = m_list;
  std::sort(ms.begin(), ms.end());
  std::vector<DependenceRow> rows;
  for (int m : ms) {
    const Solution member = solve_converged(f, family_member(fam, m), grid_ref, opts);
    const MeshFunction gap = member.x - base.x;
    // piecewise affine interpolants differ by a piecewise affine function,
    // so the sup over [0,1] is attained at a node
    DependenceRow row{m, InterpolantPair(gap).max_abs_x_bar(), norm_e(gap), std::abs(fam.amplitude) / (m * kPi)};
    rows.push_back(row);
  }
  rows.push_back(DependenceRow{std::nullopt, 0.0, 0.0, 0.0});
  return rows;
}

double solution_to_forcing_ratio(const Nonlinearity& f, const RhsFunction& h, const Grid& grid_ref,
                                 const SolverOptions& opts) {
  const double h_norm = h1_norm(h);
  if (h_norm == 0.0) throw UndefinedRatio("forcing has zero H^1_0 norm; ratio undefined");
  const Solution s = solve_converged(f, h, grid_ref, opts);
  return std::sqrt(InterpolantPair(s.x).v_bar_square_integral()) / h_norm;
}

}  // namespace monobvp
