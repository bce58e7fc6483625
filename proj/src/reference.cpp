#include "monobvp/reference.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "monobvp/error.hpp"
#include "monobvp/interpolant.hpp"
#include "monobvp/system.hpp"

namespace monobvp {

namespace {

constexpr double kPi = std::numbers::pi;

/// Fixed-step RK4 trajectory of (x, x') with stored accelerations for
/// Hermite dense output.
struct Trajectory {
  int steps = 0;
  std::vector<double> x, v, a;

  double position(double t) const {
    auto [i, s, dt] = locate(t);
    // cubic Hermite on x with slopes v
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * x[i] + h10 * dt * v[i] + h01 * x[i + 1] + h11 * dt * v[i + 1];
  }

  double velocity(double t) const {
    auto [i, s, dt] = locate(t);
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * v[i] + h10 * dt * a[i] + h01 * v[i + 1] + h11 * dt * a[i + 1];
  }

 private:
  struct Where {
    std::size_t i;
    double s;
    double dt;
  };
  Where locate(double t) const {
    const double dt = 1.0 / steps;
    const double clamped = std::clamp(t, 0.0, 1.0);
    auto i = static_cast<std::size_t>(std::min(steps - 1, static_cast<int>(clamped * steps)));
    return {i, (clamped - static_cast<double>(i) * dt) / dt, dt};
  }
};

Trajectory integrate(const Nonlinearity& f, const RhsFunction& h, double slope, int steps) {
  auto accel = [&](double t, double x, double v) { return f.eval(t, v, x) - h.eval(t); };
  Trajectory tr;
  tr.steps = steps;
  const auto count = static_cast<std::size_t>(steps) + 1;
  tr.x.resize(count);
  tr.v.resize(count);
  tr.a.resize(count);
  const double dt = 1.0 / steps;
  double x = 0.0, v = slope;
  tr.x[0] = x;
  tr.v[0] = v;
  tr.a[0] = accel(0.0, x, v);
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    const double k1x = v, k1v = accel(t, x, v);
    const double k2x = v + 0.5 * dt * k1v, k2v = accel(t + 0.5 * dt, x + 0.5 * dt * k1x, k2x);
    const double k3x = v + 0.5 * dt * k2v, k3v = accel(t + 0.5 * dt, x + 0.5 * dt * k2x, k3x);
    const double k4x = v + dt * k3v, k4v = accel(t + dt, x + dt * k3x, k4x);
    x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    const auto j = static_cast<std::size_t>(i) + 1;
    tr.x[j] = x;
    tr.v[j] = v;
    tr.a[j] = accel(j == count - 1 ? 1.0 : (i + 1) * dt, x, v);
  }
  return tr;
}

double endpoint(const Nonlinearity& f, const RhsFunction& h, double slope, int steps) {
  const double value = integrate(f, h, slope, steps).x.back();
  if (std::isnan(value)) throw OracleFailure("shooting produced NaN for slope " + std::to_string(slope));
  return value;
}

}  // namespace

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Manufactured:
      return "manufactured";
    case Provenance::Shooting:
      return "shooting";
    case Provenance::FineGrid:
      return "fine-grid";
    case Provenance::LinearDirect:
      return "linear-direct";
  }
  return "manufactured";
}

SmoothFunction builtin_exact(std::string_view id) {
  if (id == "sin")
    return {"sin", [](double t) { return std::sin(kPi * t); }, [](double t) { return kPi * std::cos(kPi * t); },
            [](double t) { return -kPi * kPi * std::sin(kPi * t); }};
  if (id == "sin2")
    return {"sin2", [](double t) { return std::sin(2 * kPi * t); },
            [](double t) { return 2 * kPi * std::cos(2 * kPi * t); },
            [](double t) { return -4 * kPi * kPi * std::sin(2 * kPi * t); }};
  // x'(0) = 1, x'(1) = -2
  if (id == "cubic-poly")
    return {"cubic-poly", [](double t) { return t * (1 - t) * (1 + t); }, [](double t) { return 1 - 3 * t * t; },
            [](double t) { return -6 * t; }};
  throw UnknownId("exact solution", std::string(id));
}

std::vector<std::string> exact_ids() { return {"cubic-poly", "sin", "sin2"}; }

std::pair<RhsFunction, ReferenceSolution> manufactured(const SmoothFunction& x_star, const Nonlinearity& f) {
  constexpr double kTol = 1e-10;
  if (std::abs(x_star.value(0.0)) > kTol || std::abs(x_star.value(1.0)) > kTol)
    throw InvalidArgument("manufactured solution '" + x_star.id + "' must vanish at both endpoints");

  auto eval = [x_star, f](double t) { return f.eval(t, x_star.d1(t), x_star.value(t)) - x_star.d2(t); };
  // central difference; h is smooth for every registered (f, x*) pair
  auto deriv = [eval](double t) {
    constexpr double d = 1e-5;
    return (eval(t + d) - eval(t - d)) / (2 * d);
  };
  RhsFunction h{"manufactured:" + x_star.id + ":" + f.id, eval, deriv, std::nullopt};
  const double h0 = eval(0.0), h1 = eval(1.0);
  if (std::abs(h0) > kTol || std::abs(h1) > kTol)
    throw InvalidArgument("manufactured case rejected: forcing for '" + x_star.id + "' under '" + f.id +
                          "' does not vanish at the endpoints (h(0) = " + std::to_string(h0) +
                          ", h(1) = " + std::to_string(h1) + ")");
  h.eval = [eval](double t) { return (t == 0.0 || t == 1.0) ? 0.0 : eval(t); };
  return {h, ReferenceSolution{x_star.value, x_star.d1, Provenance::Manufactured, 0.0, x_star.d1(0.0)}};
}

ReferenceSolution shooting(const Nonlinearity& f, const RhsFunction& h, const ShootingOptions& opts) {
  if (opts.steps < 2) throw InvalidArgument("shooting needs at least 2 steps");
  constexpr double kMaxSlope = 1e3;
  auto F = [&](double s) { return endpoint(f, h, s, opts.steps); };

  double a = -10.0, b = 10.0;
  double fa = F(a), fb = F(b);
  while (fa * fb > 0.0) {
    if (std::abs(a) * 2.0 > kMaxSlope)
      throw OracleFailure("shooting: no sign change of x(1) for |x'(0)| <= 1e3");
    a *= 2.0;
    b *= 2.0;
    fa = F(a);
    fb = F(b);
  }

  double best = std::abs(fa) < std::abs(fb) ? a : b;
  double f_best = std::min(std::abs(fa), std::abs(fb));
  double s_prev = a, f_prev = fa, s_cur = b, f_cur = fb;
  for (int iter = 0; iter < 200 && f_best > opts.root_tol; ++iter) {
    if (fa == 0.0 || fb == 0.0) break;
    double s_next = (f_cur != f_prev) ? s_cur - f_cur * (s_cur - s_prev) / (f_cur - f_prev) : 0.5 * (a + b);
    if (!(s_next > std::min(a, b) && s_next < std::max(a, b))) s_next = 0.5 * (a + b);
    if (s_next == s_cur || s_next == s_prev) s_next = 0.5 * (a + b);
    if (!(s_next > std::min(a, b) && s_next < std::max(a, b))) break;  // bracket collapsed to roundoff
    const double f_next = F(s_next);
    if ((f_next > 0.0) == (fa > 0.0)) {
      a = s_next;
      fa = f_next;
    } else {
      b = s_next;
      fb = f_next;
    }
    s_prev = s_cur;
    f_prev = f_cur;
    s_cur = s_next;
    f_cur = f_next;
    if (std::abs(f_next) < f_best) {
      f_best = std::abs(f_next);
      best = s_next;
    }
  }

  auto full = std::make_shared<Trajectory>(integrate(f, h, best, opts.steps));
  const Trajectory half = integrate(f, h, best, opts.steps / 2);
  double gap = 0.0;
  for (std::size_t i = 0; i < half.x.size(); ++i) {
    const double t = static_cast<double>(i) / half.steps;
    gap = std::max(gap, std::abs(full->position(t) - half.x[i]));
  }
  // the fourth-order error of the full run is about gap / 15
  const double accuracy = gap / 15.0 + std::abs(full->x.back());
  return ReferenceSolution{[full](double t) { return full->position(t); },
                           [full](double t) { return full->velocity(t); }, Provenance::Shooting, accuracy, best};
}

ReferenceSolution fine_grid(const Nonlinearity& f, const RhsFunction& h, int n_ref, const SolverOptions& opts) {
  if (n_ref < 4 || n_ref % 2 != 0) throw InvalidArgument("fine grid needs an even n_ref >= 4");
  const Solution fine = solve(DiscreteProblem(f, h, Grid(n_ref)), opts);
  const Solution coarse = solve(DiscreteProblem(f, h, Grid(n_ref / 2)), opts);
  if (!fine.converged || !coarse.converged)
    throw Error("fine-grid reference did not converge (certificate " + std::to_string(fine.certificate) + ")");
  double gap = 0.0;
  for (int k = 0; k <= n_ref / 2; ++k) gap = std::max(gap, std::abs(fine.x[2 * k] - coarse.x[k]));
  auto pair = std::make_shared<InterpolantPair>(fine.x);
  return ReferenceSolution{[pair](double t) { return pair->x_bar(t); }, [pair](double t) { return pair->v_bar(t); },
                           Provenance::FineGrid, gap, std::nullopt};
}

MeshFunction linear_direct(double a, const RhsFunction& h, const Grid& grid) {
  if (!(a >= 0.0)) throw InvalidArgument("linear_direct needs a >= 0");
  const auto m = static_cast<std::size_t>(grid.interior_size());
  const double dn = grid.n();
  const std::vector<double> diag(m, 2.0 + a / (dn * dn));
  const std::vector<double> off(m - 1, -1.0);
  const NodeLoad load = forcing_load(h, grid);
  return MeshFunction::from_interior(grid, tridiagonal_solve(off, diag, off, load.loads()));
}

}  // namespace monobvp
