#include "monobvp/solver.hpp"

#include <cmath>

#include "monobvp/error.hpp"

namespace monobvp {

namespace {

constexpr double kStepFloor = 1e-16;

struct Iterate {
  MeshFunction x;
  MeshFunction direction;  // Riesz representative of the residual
  double cert;
};

Iterate evaluate(const DiscreteProblem& p, MeshFunction x, double c) {
  MeshFunction g = residual_representative(p, x);
  const double cert = norm_e(g) / c;
  return {std::move(x), std::move(g), cert};
}

Iterate descent_step(const DiscreteProblem& p, const Iterate& cur, const SolverOptions& opts, int iteration) {
  const double c = opts.monotonicity_constant;
  for (double tau = opts.initial_step;; tau *= 0.5) {
    if (tau < kStepFloor)
      throw LineSearchFailure("descent step underflow at iteration " + std::to_string(iteration) +
                                  " (certificate " + std::to_string(cur.cert) + ")",
                              iteration, cur.cert, tau);
    Iterate trial = evaluate(p, cur.x - tau * cur.direction, c);
    if (trial.cert <= (1.0 - 0.5 * tau * c) * cur.cert) return trial;
  }
}

std::optional<Iterate> newton_step(const DiscreteProblem& p, const Iterate& cur, const SolverOptions& opts,
                                   bool backtrack) {
  const double c = opts.monotonicity_constant;
  std::vector<double> delta;
  try {
    delta = jacobian(p, cur.x).solve(residual(p, cur.x));
  } catch (const SingularSystem&) {
    if (backtrack) throw;
    return std::nullopt;
  }
  const MeshFunction step = MeshFunction::from_interior(p.grid, delta);
  for (double lambda = 1.0; lambda >= kStepFloor; lambda *= 0.5) {
    Iterate trial = evaluate(p, cur.x - lambda * step, c);
    if (trial.cert < cur.cert) return trial;
    if (!backtrack) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::PreconditionedDescent:
      return "preconditioned-descent";
    case Method::Newton:
      return "newton";
    case Method::Hybrid:
      return "hybrid";
  }
  return "hybrid";
}

Method parse_method(std::string_view name) {
  if (name == "preconditioned-descent") return Method::PreconditionedDescent;
  if (name == "newton") return Method::Newton;
  if (name == "hybrid") return Method::Hybrid;
  throw InvalidArgument("unknown solver method '" + std::string(name) + "'");
}

void SolverOptions::validate() const {
  if (!(tol_cert > 0.0)) throw InvalidArgument("tol_cert must be positive");
  if (!(initial_step > 0.0 && initial_step <= 1.0)) throw InvalidArgument("initial_step must lie in (0, 1]");
  if (!(monotonicity_constant > 0.0)) throw InvalidArgument("monotonicity_constant must be positive");
  if (max_iterations < 0) throw InvalidArgument("max_iterations must be non-negative");
}

MeshFunction residual_representative(const DiscreteProblem& p, const MeshFunction& x) {
  return riesz_representative(NodeLoad(p.grid, residual(p, x)));
}

double certificate(const DiscreteProblem& p, const MeshFunction& x, double monotonicity_constant) {
  return norm_e(residual_representative(p, x)) / monotonicity_constant;
}

Solution solve(const DiscreteProblem& p, const SolverOptions& opts, const std::optional<MeshFunction>& initial) {
  opts.validate();
  if (opts.method == Method::Newton && !p.f.has_partials())
    throw MissingCapability("newton needs partial derivatives of '" + p.f.id + "'");

  MeshFunction start = initial ? *initial : MeshFunction(p.grid);
  require_same_grid(p.grid, start.grid());
  Iterate cur = evaluate(p, std::move(start), opts.monotonicity_constant);

  Solution sol{cur.x, cur.cert, 0, cur.cert <= opts.tol_cert, std::string(to_string(opts.method))};
  while (!sol.converged && sol.iterations < opts.max_iterations) {
    const int iteration = sol.iterations + 1;
    std::optional<Iterate> next;
    if (opts.method == Method::Newton) {
      next = newton_step(p, cur, opts, true);
      if (!next)
        throw LineSearchFailure("newton line search failed at iteration " + std::to_string(iteration), iteration,
                                cur.cert, 0.0);
      ++sol.newton_steps;
    } else if (opts.method == Method::Hybrid && cur.cert < opts.newton_switch && p.f.has_partials()) {
      next = newton_step(p, cur, opts, false);
      if (next) ++sol.newton_steps;
    }
    if (!next) {
      next = descent_step(p, cur, opts, iteration);
      ++sol.descent_steps;
    }
    cur = std::move(*next);
    sol.iterations = iteration;
    sol.converged = cur.cert <= opts.tol_cert;
  }
  sol.x = std::move(cur.x);
  sol.certificate = cur.cert;
  return sol;
}

double lipschitz_inverse_check(const Nonlinearity& f, const RhsFunction& h1, const RhsFunction& h2,
                               const Grid& grid, const SolverOptions& opts) {
  const MeshFunction rho1 = riesz_representative(forcing_load(h1, grid));
  const MeshFunction rho2 = riesz_representative(forcing_load(h2, grid));
  const double load_gap = norm_e(rho1 - rho2);
  if (load_gap == 0.0) throw UndefinedRatio("identical loads: Lipschitz ratio undefined");

  const Solution s1 = solve(DiscreteProblem(f, h1, grid), opts);
  const Solution s2 = solve(DiscreteProblem(f, h2, grid), opts);
  if (!s1.converged || !s2.converged) throw Error("lipschitz check: solve did not converge");
  return norm_e(s1.x - s2.x) / load_gap;
}

}  // namespace monobvp
