#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monobvp/mesh.hpp"

namespace monobvp {

using ScalarFn = std::function<double(double)>;
/// Signature (t, v, x) -> value, where v stands for the derivative slot.
using PointFn = std::function<double(double t, double v, double x)>;

/// f(t, v, x) = f1(t, x) + v * g(t).
struct AffineDecomposition {
  std::function<double(double t, double x)> f1;
  ScalarFn g;
};

/// Right-hand nonlinearity f of x'' = f(t, x', x) - h.
struct Nonlinearity {
  std::string id;
  PointFn eval;
  PointFn partial_v;  // empty when unavailable
  PointFn partial_x;  // empty when unavailable
  /// Claim: f is nondecreasing in x, uniformly in (t, v).
  bool monotone_in_x = false;
  bool depends_on_v = true;
  std::optional<AffineDecomposition> affine;
  /// r -> f_r, an integrable majorant of |f| on the H^1_0 ball of radius r.
  std::function<ScalarFn(double r)> dominator;

  bool has_partials() const { return static_cast<bool>(partial_v) && static_cast<bool>(partial_x); }
};

/// Forcing term h with h(0) = h(1) = 0.
struct RhsFunction {
  std::string id;
  ScalarFn eval;
  ScalarFn deriv;  // empty when unavailable
  std::optional<double> sup_norm_hint;
};

/// Names of the coefficient functions g and g1 used by the example families.
struct Coefficients {
  std::string g = "1+t";
  std::string g1 = "sin";
};

ScalarFn coefficient(std::string_view id);
std::vector<std::string> coefficient_ids();

Nonlinearity builtin_nonlinearity(std::string_view id, const Coefficients& coeffs = {});
std::vector<std::string> nonlinearity_ids();

RhsFunction builtin_rhs(std::string_view id);
std::vector<std::string> rhs_ids();

/// Throws InvalidArgument unless |h(0)| and |h(1)| are at most `tol`.
void require_endpoint_zeros(const RhsFunction& h, double tol = 1e-12);

/// Sampling box for the assumption probes.
struct ProbeRanges {
  double x_lo = -5.0, x_hi = 5.0;
  double v_lo = -50.0, v_hi = 50.0;
};

struct ProbeReport {
  std::string kind;
  int trials = 0;
  double min_value = 0.0;
  /// Named arguments of the sample attaining min_value.
  std::vector<std::pair<std::string, double>> witness;
  std::uint64_t seed = 0;
};

/// Minimum of (s - t)(f(k, w, s) - f(l, z, t)) over sampled tuples.
ProbeReport probe_p2(const Nonlinearity& f, const ProbeRanges& ranges, int trials, std::uint64_t seed);

/// Minimum of f_r(t) - |f(t, v, x)| over t in [0,1], |x| <= r, v in the probe range.
ProbeReport probe_p1(const Nonlinearity& f, double r, const ProbeRanges& ranges, int trials,
                     std::uint64_t seed);

/// Minimum over random pairs (u, w) in E of <Ku - Kw, u - w>_E / |u - w|_E^2.
ProbeReport probe_operator_monotonicity(const Nonlinearity& f, const Grid& grid, int trials,
                                        std::uint64_t seed, const ProbeRanges& ranges = {});

}  // namespace monobvp
