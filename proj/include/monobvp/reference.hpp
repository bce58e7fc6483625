#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monobvp/mesh.hpp"
#include "monobvp/problems.hpp"
#include "monobvp/solver.hpp"

namespace monobvp {

enum class Provenance { Manufactured, Shooting, FineGrid, LinearDirect };

std::string_view to_string(Provenance provenance);

/// A solution of the continuous problem x'' = f(t, x', x) - h, x(0) = x(1) = 0.
struct ReferenceSolution {
  ScalarFn x;
  ScalarFn xdot;
  Provenance provenance = Provenance::Manufactured;
  double accuracy_estimate = 0.0;
  /// x'(0) found by the shooting search.
  std::optional<double> initial_slope;
};

/// A smooth candidate solution with its first two derivatives.
struct SmoothFunction {
  std::string id;
  ScalarFn value;
  ScalarFn d1;
  ScalarFn d2;
};

SmoothFunction builtin_exact(std::string_view id);
std::vector<std::string> exact_ids();

/// h = f(t, x*', x*) - x*'' so that x* solves the problem exactly.
/// Throws InvalidArgument when x* or h fails to vanish at the endpoints.
std::pair<RhsFunction, ReferenceSolution> manufactured(const SmoothFunction& x_star, const Nonlinearity& f);

struct ShootingOptions {
  int steps = 100000;
  double root_tol = 1e-12;
};

/// Integrates x'' = f(t, x', x) - h from x(0) = 0, x'(0) = s with classical
/// fourth-order Runge-Kutta and searches s with |x(1)| <= root_tol: the
/// bracket [-10, 10] is doubled up to |s| <= 1e3, then refined by secant
/// steps safeguarded with bisection. Dense output uses cubic Hermite
/// interpolation between steps. Throws OracleFailure when no bracket exists.
ReferenceSolution shooting(const Nonlinearity& f, const RhsFunction& h, const ShootingOptions& opts = {});

/// Discrete solution at n_ref exposed through its interpolants; the accuracy
/// estimate is the nodal gap to the n_ref/2 solution.
ReferenceSolution fine_grid(const Nonlinearity& f, const RhsFunction& h, int n_ref = 8192,
                            const SolverOptions& opts = {});

/// Exact discrete solution for f(t, v, x) = a*x via one tridiagonal solve.
MeshFunction linear_direct(double a, const RhsFunction& h, const Grid& grid);

}  // namespace monobvp
