#include "monobvp/system.hpp"

#include "monobvp/error.hpp"

namespace monobvp {

DiscreteProblem::DiscreteProblem(Nonlinearity f_in, RhsFunction h_in, Grid grid_in)
    : f(std::move(f_in)), h(std::move(h_in)), grid(grid_in) {
  require_endpoint_zeros(h);
}

std::vector<double> Tridiagonal::solve(const std::vector<double>& rhs) const {
  return tridiagonal_solve(sub, diag, super, rhs);
}

std::vector<double> Tridiagonal::multiply(const std::vector<double>& x) const {
  const std::size_t m = diag.size();
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sum = diag[i] * x[i];
    if (i > 0) sum += sub[i - 1] * x[i - 1];
    if (i + 1 < m) sum += super[i] * x[i + 1];
    y[i] = sum;
  }
  return y;
}

NodeLoad forcing_load(const RhsFunction& h, const Grid& grid) {
  const double inv_n2 = 1.0 / (static_cast<double>(grid.n()) * grid.n());
  std::vector<double> loads(static_cast<std::size_t>(grid.interior_size()));
  for (int k = 1; k < grid.n(); ++k) loads[static_cast<std::size_t>(k - 1)] = inv_n2 * h.eval(grid.node(k));
  return NodeLoad(grid, std::move(loads));
}

std::vector<double> residual(const DiscreteProblem& p, const MeshFunction& x) {
  require_same_grid(p.grid, x.grid());
  const int n = p.grid.n();
  const double dn = n;
  const double inv_n2 = 1.0 / (dn * dn);
  std::vector<double> r(static_cast<std::size_t>(n - 1));
  for (int k = 1; k < n; ++k) {
    const double t = p.grid.node(k);
    const double lap = x[k + 1] - 2.0 * x[k] + x[k - 1];
    const double slope = dn * (x[k] - x[k - 1]);
    r[static_cast<std::size_t>(k - 1)] = -lap + inv_n2 * (p.f.eval(t, slope, x[k]) - p.h.eval(t));
  }
  return r;
}

double operator_pairing(const Nonlinearity& f, const MeshFunction& x, const MeshFunction& y) {
  require_same_grid(x.grid(), y.grid());
  const Grid& grid = x.grid();
  const double dn = grid.n();
  double load = 0.0;
  for (int k = 1; k < grid.n(); ++k) load += y[k] * f.eval(grid.node(k), dn * (x[k] - x[k - 1]), x[k]);
  return inner_e(x, y) + load / (dn * dn);
}

double weak_pairing(const DiscreteProblem& p, const MeshFunction& x, const MeshFunction& y) {
  require_same_grid(p.grid, x.grid());
  require_same_grid(p.grid, y.grid());
  const double dn = p.grid.n();
  double forcing = 0.0;
  for (int k = 1; k < p.grid.n(); ++k) forcing += y[k] * p.h.eval(p.grid.node(k));
  return operator_pairing(p.f, x, y) - forcing / (dn * dn);
}

Tridiagonal jacobian(const DiscreteProblem& p, const MeshFunction& x) {
  require_same_grid(p.grid, x.grid());
  if (!p.f.has_partials())
    throw MissingCapability("nonlinearity '" + p.f.id + "' has no partial derivatives");
  const int n = p.grid.n();
  const double dn = n;
  const auto m = static_cast<std::size_t>(n - 1);
  Tridiagonal jac{std::vector<double>(m - 1), std::vector<double>(m), std::vector<double>(m - 1, -1.0)};
  for (int k = 1; k < n; ++k) {
    const double t = p.grid.node(k);
    const double slope = dn * (x[k] - x[k - 1]);
    const double fv = p.f.partial_v(t, slope, x[k]);
    const double fx = p.f.partial_x(t, slope, x[k]);
    const auto row = static_cast<std::size_t>(k - 1);
    jac.diag[row] = 2.0 + fv / dn + fx / (dn * dn);
    if (row > 0) jac.sub[row - 1] = -1.0 - fv / dn;
  }
  return jac;
}

}  // namespace monobvp
