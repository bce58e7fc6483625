#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monobvp/interpolant.hpp"
#include "monobvp/mesh.hpp"
#include "monobvp/reference.hpp"
#include "monobvp/system.hpp"

namespace monobvp {

/// Nodal gaps between a discrete solution and a continuous reference.
struct ErrorPair {
  /// max_{0<=k<=n} |x(k) - x_ref(k/n)|
  double e_x = 0.0;
  /// max_{1<=k<=n} |n Dx(k-1) - x_ref'(k/n)|
  double e_v = 0.0;
};

ErrorPair grid_errors(const MeshFunction& x, const ReferenceSolution& ref);

/// One algebraic inequality lhs <= rhs, recorded at its tightest instance.
struct ChainCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = true;
};

/// Measured quantities of the a-priori bound chain for one discrete solution.
///
/// The `claimed_*` fields are the bounds 2 n^{-3/2} |h|_C on |x|_E and
/// 2 |h|_C on max n|Dx| and max |x|; they are reported for comparison only.
/// The entries of `chain` hold for every element of E.
struct BoundReport {
  int n = 0;
  double norm_e = 0.0;
  double norm_0 = 0.0;
  double sup_h = 0.0;
  double claimed_norm_bound = 0.0;  // 2 n^{-3/2} sup_h
  double claimed_norm_ratio = 0.0;  // norm_e / claimed_norm_bound
  double slope_observed = 0.0;      // max_k n |Dx(k-1)|
  double slope_claimed = 0.0;       // 2 sup_h
  double max_observed = 0.0;        // max_k |x(k)|
  double max_claimed = 0.0;         // 2 sup_h
  std::vector<ChainCheck> chain;

  bool chain_passed() const;
  double sqrt_n_norm_e() const;
};

/// Relative tolerance applied to every chain inequality.
inline constexpr double kChainTolerance = 1e-10;

/// Checks the inequalities |x|_E <= 2|x|_0, |Dx(k-1)| <= |x|_E,
/// sum_{j<=k} |Dx(j-1)| <= sqrt(k)|x|_E, max|x(k)| <= sqrt(n)|x|_E and
/// max|x_bar| <= (int v_bar^2)^{1/2}.
std::vector<ChainCheck> inequality_chain(const MeshFunction& x);

/// sup_{[0,1]} |h| from the registered hint, else from 2*10^4 uniform samples.
double sup_norm(const RhsFunction& h);

BoundReport bound_report(const DiscreteProblem& p, const MeshFunction& x);

struct RateFit {
  std::vector<std::pair<double, double>> points;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::string> warnings;
};

/// Least-squares line through (log n, log error). Non-positive or
/// non-finite errors are dropped with a warning; fewer than three
/// surviving points is an error.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

/// max over interior samples of |x''_num(t) - f(t, x'(t), x(t)) + h(t)|,
/// with x''_num the central second difference of ref.x at `spacing`.
double strong_form_check(const ReferenceSolution& ref, const Nonlinearity& f, const RhsFunction& h,
                         int sample_count, double spacing = 1e-3);

}  // namespace monobvp
