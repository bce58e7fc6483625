#include "monobvp/problems.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "monobvp/error.hpp"
#include "monobvp/random.hpp"
#include "monobvp/system.hpp"

namespace monobvp {

namespace {

constexpr double kPi = std::numbers::pi;

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// d/dv |arctan v|; zero at the kink v = 0.
double abs_atan_dv(double v) { return sign(v) / (1.0 + v * v); }

const std::map<std::string, ScalarFn, std::less<>>& coefficient_table() {
  static const std::map<std::string, ScalarFn, std::less<>> table{
      {"zero", [](double) { return 0.0; }},
      {"one", [](double) { return 1.0; }},
      {"1+t", [](double t) { return 1.0 + t; }},
      {"t(1-t)", [](double t) { return t * (1.0 - t); }},
      {"sin", [](double t) { return std::sin(kPi * t); }},
  };
  return table;
}

Nonlinearity make_zero() {
  Nonlinearity f;
  f.id = "zero";
  f.eval = [](double, double, double) { return 0.0; };
  f.partial_v = [](double, double, double) { return 0.0; };
  f.partial_x = [](double, double, double) { return 0.0; };
  f.monotone_in_x = true;
  f.depends_on_v = false;
  f.affine = AffineDecomposition{[](double, double) { return 0.0; }, [](double) { return 0.0; }};
  f.dominator = [](double) -> ScalarFn { return [](double) { return 0.0; }; };
  return f;
}

Nonlinearity make_linear() {
  Nonlinearity f;
  f.id = "linear";
  f.eval = [](double, double, double x) { return x; };
  f.partial_v = [](double, double, double) { return 0.0; };
  f.partial_x = [](double, double, double) { return 1.0; };
  f.monotone_in_x = true;
  f.depends_on_v = false;
  f.affine = AffineDecomposition{[](double, double x) { return x; }, [](double) { return 0.0; }};
  f.dominator = [](double r) -> ScalarFn { return [r](double) { return r; }; };
  return f;
}

Nonlinearity make_cubic(ScalarFn g) {
  Nonlinearity f;
  f.id = "cubic";
  f.eval = [g](double t, double, double x) { return g(t) * x * x * x; };
  f.partial_v = [](double, double, double) { return 0.0; };
  f.partial_x = [g](double t, double, double x) { return 3.0 * g(t) * x * x; };
  f.monotone_in_x = true;
  f.depends_on_v = false;
  f.affine = AffineDecomposition{[g](double t, double x) { return g(t) * x * x * x; },
                                 [](double) { return 0.0; }};
  f.dominator = [g](double r) -> ScalarFn { return [g, r](double t) { return g(t) * r * r * r; }; };
  return f;
}

Nonlinearity make_arctan(ScalarFn g) {
  Nonlinearity f;
  f.id = "arctan";
  f.eval = [g](double t, double, double x) { return g(t) * std::atan(x); };
  f.partial_v = [](double, double, double) { return 0.0; };
  f.partial_x = [g](double t, double, double x) { return g(t) / (1.0 + x * x); };
  f.monotone_in_x = true;
  f.depends_on_v = false;
  f.affine = AffineDecomposition{[g](double t, double x) { return g(t) * std::atan(x); },
                                 [](double) { return 0.0; }};
  f.dominator = [g](double r) -> ScalarFn { return [g, r](double t) { return g(t) * std::atan(r); }; };
  return f;
}

// g(t) exp(x - t^2) |arctan v|
Nonlinearity make_ex_a(ScalarFn g) {
  Nonlinearity f;
  f.id = "2.3-a";
  f.eval = [g](double t, double v, double x) {
    return g(t) * std::exp(x - t * t) * std::abs(std::atan(v));
  };
  f.partial_v = [g](double t, double v, double x) { return g(t) * std::exp(x - t * t) * abs_atan_dv(v); };
  f.partial_x = [g](double t, double v, double x) {
    return g(t) * std::exp(x - t * t) * std::abs(std::atan(v));
  };
  f.monotone_in_x = true;
  // |x(t)| <= r on the ball, so exp(x) <= c1 = e^r and |arctan| <= pi/2.
  f.dominator = [g](double r) -> ScalarFn {
    const double c1 = std::exp(r);
    return [g, c1](double t) { return c1 * kPi / 2.0 * g(t) * std::exp(-t * t); };
  };
  return f;
}

// g(t) arctan(x) |arctan v|
Nonlinearity make_ex_b(ScalarFn g) {
  Nonlinearity f;
  f.id = "2.3-b";
  f.eval = [g](double t, double v, double x) { return g(t) * std::atan(x) * std::abs(std::atan(v)); };
  f.partial_v = [g](double t, double v, double x) { return g(t) * std::atan(x) * abs_atan_dv(v); };
  f.partial_x = [g](double t, double v, double x) {
    return g(t) * std::abs(std::atan(v)) / (1.0 + x * x);
  };
  f.monotone_in_x = true;
  f.dominator = [g](double r) -> ScalarFn {
    const double c = std::atan(r) * kPi / 2.0;
    return [g, c](double t) { return c * g(t); };
  };
  return f;
}

// g(t) x^3 + exp(x - t^2) |arctan v|
Nonlinearity make_ex_c(ScalarFn g) {
  Nonlinearity f;
  f.id = "2.3-c";
  f.eval = [g](double t, double v, double x) {
    return g(t) * x * x * x + std::exp(x - t * t) * std::abs(std::atan(v));
  };
  f.partial_v = [](double t, double v, double x) { return std::exp(x - t * t) * abs_atan_dv(v); };
  f.partial_x = [g](double t, double v, double x) {
    return 3.0 * g(t) * x * x + std::exp(x - t * t) * std::abs(std::atan(v));
  };
  f.monotone_in_x = true;
  f.dominator = [g](double r) -> ScalarFn {
    const double c1 = std::exp(r);
    return [g, c1, r](double t) { return g(t) * r * r * r + c1 * kPi / 2.0 * std::exp(-t * t); };
  };
  return f;
}

// g(t) arctan(x) + g1(t) v
Nonlinearity make_affine_b(ScalarFn g, ScalarFn g1) {
  Nonlinearity f;
  f.id = "2.4-b";
  f.eval = [g, g1](double t, double v, double x) { return g(t) * std::atan(x) + g1(t) * v; };
  f.partial_v = [g1](double t, double, double) { return g1(t); };
  f.partial_x = [g](double t, double, double x) { return g(t) / (1.0 + x * x); };
  f.monotone_in_x = true;
  f.affine = AffineDecomposition{[g](double t, double x) { return g(t) * std::atan(x); }, g1};
  return f;
}

struct RhsEntry {
  ScalarFn eval;
  ScalarFn deriv;
  std::optional<double> hint;
};

const std::map<std::string, RhsEntry, std::less<>>& rhs_table() {
  static const std::map<std::string, RhsEntry, std::less<>> table{
      {"zero", {[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0}},
      {"sin", {[](double t) { return std::sin(kPi * t); }, [](double t) { return kPi * std::cos(kPi * t); }, 1.0}},
      {"sin2",
       {[](double t) { return std::sin(2.0 * kPi * t); },
        [](double t) { return 2.0 * kPi * std::cos(2.0 * kPi * t); }, 1.0}},
      // (1 + pi^2) sin(pi t): forcing of x = sin(pi t) under f(t, v, x) = x
      {"linear-sin",
       {[](double t) { return (1.0 + kPi * kPi) * std::sin(kPi * t); },
        [](double t) { return (1.0 + kPi * kPi) * kPi * std::cos(kPi * t); }, 1.0 + kPi * kPi}},
      // pi^2 sin(pi t): forcing of x = sin(pi t) under f = 0
      {"poisson-sin",
       {[](double t) { return kPi * kPi * std::sin(kPi * t); },
        [](double t) { return kPi * kPi * kPi * std::cos(kPi * t); }, kPi * kPi}},
      {"bump", {[](double t) { return 4.0 * t * (1.0 - t); }, [](double t) { return 4.0 - 8.0 * t; }, 1.0}},
      {"mixed",
       {[](double t) { return std::sin(kPi * t) + 0.5 * std::sin(3.0 * kPi * t) + 2.0 * t * t * (1.0 - t); },
        [](double t) {
          return kPi * std::cos(kPi * t) + 1.5 * kPi * std::cos(3.0 * kPi * t) + 4.0 * t - 6.0 * t * t;
        },
        std::nullopt}},
  };
  return table;
}

}  // namespace

ScalarFn coefficient(std::string_view id) {
  const auto& table = coefficient_table();
  const auto it = table.find(id);
  if (it == table.end()) throw UnknownId("coefficient", std::string(id));
  return it->second;
}

std::vector<std::string> coefficient_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : coefficient_table()) ids.push_back(id);
  return ids;
}

Nonlinearity builtin_nonlinearity(std::string_view id, const Coefficients& coeffs) {
  if (id == "zero") return make_zero();
  if (id == "linear") return make_linear();
  const ScalarFn g = coefficient(coeffs.g);
  if (id == "cubic") return make_cubic(g);
  if (id == "arctan") return make_arctan(g);
  if (id == "2.3-a") return make_ex_a(g);
  if (id == "2.3-b") return make_ex_b(g);
  if (id == "2.3-c") return make_ex_c(g);
  if (id == "2.4-b") return make_affine_b(g, coefficient(coeffs.g1));
  throw UnknownId("nonlinearity", std::string(id));
}

std::vector<std::string> nonlinearity_ids() {
  return {"zero", "linear", "cubic", "arctan", "2.3-a", "2.3-b", "2.3-c", "2.4-b"};
}

RhsFunction builtin_rhs(std::string_view id) {
  const auto& table = rhs_table();
  const auto it = table.find(id);
  if (it == table.end()) throw UnknownId("rhs", std::string(id));
  return RhsFunction{it->first, it->second.eval, it->second.deriv, it->second.hint};
}

std::vector<std::string> rhs_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, entry] : rhs_table()) ids.push_back(id);
  return ids;
}

void require_endpoint_zeros(const RhsFunction& h, double tol) {
  const double h0 = h.eval(0.0);
  const double h1 = h.eval(1.0);
  if (!(std::abs(h0) <= tol && std::abs(h1) <= tol))
    throw InvalidArgument("forcing '" + h.id + "' must vanish at t = 0 and t = 1 (h(0) = " +
                          std::to_string(h0) + ", h(1) = " + std::to_string(h1) + ")");
}

ProbeReport probe_p2(const Nonlinearity& f, const ProbeRanges& ranges, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("probe needs at least one trial");
  Rng rng(seed);
  ProbeReport report{"p2", trials, std::numeric_limits<double>::infinity(), {}, seed};
  for (int i = 0; i < trials; ++i) {
    const double k = rng.uniform();
    const double l = rng.uniform();
    const double s = rng.uniform(ranges.x_lo, ranges.x_hi);
    const double t = rng.uniform(ranges.x_lo, ranges.x_hi);
    const double w = rng.uniform(ranges.v_lo, ranges.v_hi);
    const double z = rng.uniform(ranges.v_lo, ranges.v_hi);
    const double value = (s - t) * (f.eval(k, w, s) - f.eval(l, z, t));
    if (value < report.min_value) {
      report.min_value = value;
      report.witness = {{"k", k}, {"l", l}, {"s", s}, {"t", t}, {"w", w}, {"z", z}};
    }
  }
  return report;
}

ProbeReport probe_p1(const Nonlinearity& f, double r, const ProbeRanges& ranges, int trials,
                     std::uint64_t seed) {
  if (!f.dominator) throw MissingCapability("nonlinearity '" + f.id + "' has no dominator");
  if (trials < 1) throw InvalidArgument("probe needs at least one trial");
  if (!(r > 0.0)) throw InvalidArgument("dominator radius must be positive");
  const ScalarFn f_r = f.dominator(r);
  Rng rng(seed);
  ProbeReport report{"p1", trials, std::numeric_limits<double>::infinity(), {}, seed};
  for (int i = 0; i < trials; ++i) {
    const double t = rng.uniform();
    const double x = rng.uniform(-r, r);
    const double v = rng.uniform(ranges.v_lo, ranges.v_hi);
    const double value = f_r(t) - std::abs(f.eval(t, v, x));
    if (value < report.min_value) {
      report.min_value = value;
      report.witness = {{"t", t}, {"v", v}, {"x", x}, {"r", r}};
    }
  }
  return report;
}

ProbeReport probe_operator_monotonicity(const Nonlinearity& f, const Grid& grid, int trials,
                                        std::uint64_t seed, const ProbeRanges& ranges) {
  if (trials < 1) throw InvalidArgument("probe needs at least one trial");
  Rng rng(seed);
  ProbeReport report{"operator_monotonicity", trials, std::numeric_limits<double>::infinity(), {}, seed};
  const auto m = static_cast<std::size_t>(grid.interior_size());
  std::vector<double> a(m), b(m);
  for (int i = 0; i < trials; ++i) {
    // w = u + scale * d, with scale log-uniform in [1e-3, 1]
    double scale = 0.0;
    double gap = 0.0;
    MeshFunction u(grid), w(grid);
    do {
      for (auto& v : a) v = rng.uniform(ranges.x_lo, ranges.x_hi);
      scale = std::pow(10.0, rng.uniform(-3.0, 0.0));
      for (std::size_t j = 0; j < m; ++j) b[j] = a[j] + scale * rng.uniform(ranges.x_lo, ranges.x_hi);
      u = MeshFunction::from_interior(grid, a);
      w = MeshFunction::from_interior(grid, b);
      gap = norm_e(u - w);
    } while (gap == 0.0);
    const MeshFunction diff = u - w;
    const double ratio = (operator_pairing(f, u, diff) - operator_pairing(f, w, diff)) / (gap * gap);
    if (ratio < report.min_value) {
      report.min_value = ratio;
      report.witness = {{"trial", static_cast<double>(i)}, {"scale", scale}, {"norm_e_gap", gap}};
    }
  }
  return report;
}

}  // namespace monobvp
