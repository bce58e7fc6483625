#pragma once

#include <optional>
#include <vector>

#include "monobvp/mesh.hpp"
#include "monobvp/problems.hpp"
#include "monobvp/solver.hpp"

namespace monobvp {

/// Forcing family h_m(t) = h0(t) + A/(m pi) sin(m pi t).
///
/// The perturbation tends to zero uniformly like A/(m pi) while its
/// derivative A cos(m pi t) keeps L^2 norm A/sqrt(2): h_m converges to h0
/// weakly but not strongly in H^1_0.
struct WeakFamily {
  RhsFunction h0;
  double amplitude = 1.0;
};

RhsFunction family_member(const WeakFamily& fam, int m);

/// H^1_0 norm of a forcing term, (int_0^1 h'^2)^{1/2}, by composite
/// Simpson quadrature on 2*10^4 cells.
double h1_norm(const RhsFunction& h);

struct DependenceRow {
  /// Family index; empty for the baseline row (h0 itself, m = infinity).
  std::optional<int> m;
  double sup_gap = 0.0;     // max_t |x_m(t) - x_0(t)|
  double e_norm_gap = 0.0;  // |x_m - x_0|_E on the reference grid
  double h_sup_gap = 0.0;   // A/(m pi)
};

/// Solves the problem for h0 and for each h_m on `grid_ref`. Needs the
/// affine split f = f1(t, x) + v g(t); throws MissingCapability otherwise.
std::vector<DependenceRow> dependence_experiment(const Nonlinearity& f, const WeakFamily& fam,
                                                 const std::vector<int>& m_list, const Grid& grid_ref,
                                                 const SolverOptions& opts = {});

/// |x|_{H^1_0} / |h|_{H^1_0}, with |x| from the exact integral of v_bar^2.
double solution_to_forcing_ratio(const Nonlinearity& f, const RhsFunction& h, const Grid& grid_ref,
                                 const SolverOptions& opts = {});

}  // namespace monobvp
