#pragma once

#include <vector>

#include "monobvp/mesh.hpp"
#include "monobvp/problems.hpp"

namespace monobvp {

/// The discrete problem
///   -D^2 x(k-1) + f(k/n, n Dx(k-1), x(k)) / n^2 = h(k/n) / n^2,  k = 1..n-1,
/// with x(0) = x(n) = 0. The k = n equation involves y(n) = 0 in the weak
/// form and is dropped.
struct DiscreteProblem {
  DiscreteProblem(Nonlinearity f, RhsFunction h, Grid grid);

  Nonlinearity f;
  RhsFunction h;
  Grid grid;
};

/// Bands of an (n-1) x (n-1) tridiagonal matrix; `sub[i]` is A(i+1,i) and
/// `super[i]` is A(i,i+1).
struct Tridiagonal {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  std::vector<double> solve(const std::vector<double>& rhs) const;
  std::vector<double> multiply(const std::vector<double>& x) const;
};

/// Load functional of the forcing term: entries h(k/n) / n^2.
NodeLoad forcing_load(const RhsFunction& h, const Grid& grid);

/// Strong-form residual, entry k-1 for node k = 1..n-1.
std::vector<double> residual(const DiscreteProblem& p, const MeshFunction& x);

/// <Kx, y> = <x, y>_E + n^-2 sum_k y(k) f(k/n, n Dx(k-1), x(k)).
double operator_pairing(const Nonlinearity& f, const MeshFunction& x, const MeshFunction& y);

/// <Kx, y> - n^-2 sum_k y(k) h(k/n). By summation by parts this equals
/// sum_k y(k) residual(k).
double weak_pairing(const DiscreteProblem& p, const MeshFunction& x, const MeshFunction& y);

/// Derivative of the residual; needs f.partial_v and f.partial_x.
Tridiagonal jacobian(const DiscreteProblem& p, const MeshFunction& x);

}  // namespace monobvp
