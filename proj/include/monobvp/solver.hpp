#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "monobvp/mesh.hpp"
#include "monobvp/system.hpp"

namespace monobvp {

enum class Method { PreconditionedDescent, Newton, Hybrid };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct SolverOptions {
  Method method = Method::Hybrid;
  /// Stop once the error certificate (an E-norm bound) is at most this.
  double tol_cert = 1e-10;
  int max_iterations = 100000;
  /// Initial descent step, in (0, 1].
  double initial_step = 1.0;
  /// Strong monotonicity constant c of the discrete operator.
  double monotonicity_constant = 1.0;
  /// Hybrid mode switches from descent to Newton below this certificate.
  double newton_switch = 1e-3;

  void validate() const;
};

struct Solution {
  MeshFunction x;
  /// Upper bound on |x - x*|_E when the operator is c-strongly monotone.
  double certificate = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string method_used;
  int newton_steps = 0;
  int descent_steps = 0;
};

/// |Riesz(residual(x))|_E / c. Under c-strong monotonicity of K this bounds
/// the distance from x to the exact discrete solution.
double certificate(const DiscreteProblem& p, const MeshFunction& x, double monotonicity_constant = 1.0);

/// Riesz representative of the residual functional y -> sum_k y(k) residual(k).
MeshFunction residual_representative(const DiscreteProblem& p, const MeshFunction& x);

/// Solves the discrete problem starting from `initial` (default: zero).
///
/// Preconditioned descent steps x <- x - tau * Riesz(residual(x)), with tau
/// halved from `initial_step` until the certificate shrinks by (1 - tau*c/2).
/// Newton steps use the tridiagonal Jacobian; hybrid mode runs descent until
/// the certificate drops below `newton_switch` and then prefers Newton,
/// falling back to a descent step whenever Newton would not reduce the
/// certificate (or the partials are missing).
///
/// Exhausting `max_iterations` returns the last iterate with converged =
/// false. Throws LineSearchFailure when the descent step underflows 1e-16.
Solution solve(const DiscreteProblem& p, const SolverOptions& opts = {},
               const std::optional<MeshFunction>& initial = std::nullopt);

/// |x1 - x2|_E / |rho1 - rho2|_E, where x_i solves the problem with forcing
/// h_i and rho_i is the Riesz representative of the load h_i(k/n)/n^2.
double lipschitz_inverse_check(const Nonlinearity& f, const RhsFunction& h1, const RhsFunction& h2,
                               const Grid& grid, const SolverOptions& opts = {});

}  // namespace monobvp
