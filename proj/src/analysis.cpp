#include "monobvp/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "monobvp/error.hpp"

namespace monobvp {

namespace {

ChainCheck make_check(std::string name, double lhs, double rhs) {
  const bool ok = lhs - rhs <= kChainTolerance * std::max(1.0, std::abs(rhs));
  return ChainCheck{std::move(name), lhs, rhs, ok};
}

// Tracks the instance with the smallest slack rhs - lhs.
struct Tightest {
  double lhs = 0.0, rhs = 0.0;
  bool seen = false;
  void offer(double l, double r) {
    if (!seen || r - l < rhs - lhs) {
      lhs = l;
      rhs = r;
      seen = true;
    }
  }
};

}  // namespace

ErrorPair grid_errors(const MeshFunction& x, const ReferenceSolution& ref) {
  const Grid& g = x.grid();
  const double dn = g.n();
  ErrorPair err;
  for (int k = 0; k <= g.n(); ++k) err.e_x = std::max(err.e_x, std::abs(x[k] - ref.x(g.node(k))));
  for (int k = 1; k <= g.n(); ++k)
    err.e_v = std::max(err.e_v, std::abs(dn * (x[k] - x[k - 1]) - ref.xdot(g.node(k))));
  return err;
}

bool BoundReport::chain_passed() const {
  return std::all_of(chain.begin(), chain.end(), [](const ChainCheck& c) { return c.passed; });
}

double BoundReport::sqrt_n_norm_e() const { return std::sqrt(static_cast<double>(n)) * norm_e; }

std::vector<ChainCheck> inequality_chain(const MeshFunction& x) {
  const int n = x.grid().n();
  const double e = norm_e(x);
  const auto d = forward_difference(x);

  std::vector<ChainCheck> out;
  out.push_back(make_check("norm_e_le_2_norm_0", e, 2.0 * norm_0(x)));

  Tightest single, partial;
  double running = 0.0;
  double max_abs = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double step = std::abs(d[static_cast<std::size_t>(k - 1)]);
    single.offer(step, e);
    running += step;
    partial.offer(running, std::sqrt(static_cast<double>(k)) * e);
    max_abs = std::max(max_abs, std::abs(x[k]));
  }
  out.push_back(make_check("difference_le_norm_e", single.lhs, single.rhs));
  out.push_back(make_check("partial_sum_le_sqrt_k_norm_e", partial.lhs, partial.rhs));
  out.push_back(make_check("max_le_sqrt_n_norm_e", max_abs, std::sqrt(static_cast<double>(n)) * e));

  const InterpolantPair ip(x);
  out.push_back(make_check("sobolev_interpolant", ip.max_abs_x_bar(), std::sqrt(ip.v_bar_square_integral())));
  return out;
}

double sup_norm(const RhsFunction& h) {
  if (h.sup_norm_hint) return *h.sup_norm_hint;
  constexpr int kSamples = 20000;
  double best = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double t = static_cast<double>(i) / (kSamples - 1);
    best = std::max(best, std::abs(h.eval(t)));
  }
  return best;
}

BoundReport bound_report(const DiscreteProblem& p, const MeshFunction& x) {
  require_same_grid(p.grid, x.grid());
  const int n = p.grid.n();
  const double dn = n;

  BoundReport r;
  r.n = n;
  r.norm_e = norm_e(x);
  r.norm_0 = norm_0(x);
  r.sup_h = sup_norm(p.h);
  r.claimed_norm_bound = 2.0 * std::pow(dn, -1.5) * r.sup_h;
  r.claimed_norm_ratio = r.claimed_norm_bound > 0.0 ? r.norm_e / r.claimed_norm_bound : 0.0;
  for (int k = 1; k <= n; ++k) {
    r.slope_observed = std::max(r.slope_observed, dn * std::abs(x[k] - x[k - 1]));
    r.max_observed = std::max(r.max_observed, std::abs(x[k]));
  }
  r.slope_claimed = 2.0 * r.sup_h;
  r.max_claimed = 2.0 * r.sup_h;
  r.chain = inequality_chain(x);
  return r;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  RateFit fit;
  for (const auto& [n, err] : points) {
    if (!(err > 0.0) || !std::isfinite(err) || !(n > 0.0)) {
      fit.warnings.push_back("dropped point n=" + std::to_string(n) + " error=" + std::to_string(err));
      continue;
    }
    fit.points.emplace_back(n, err);
  }
  if (fit.points.size() < 3)
    throw InvalidArgument("rate fit needs at least 3 points with positive error, got " +
                          std::to_string(fit.points.size()));

  const double m = static_cast<double>(fit.points.size());
  double sx = 0, sy = 0;
  for (const auto& [n, err] : fit.points) {
    sx += std::log(n);
    sy += std::log(err);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [n, err] : fit.points) {
    const double dx = std::log(n) - mx, dy = std::log(err) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InvalidArgument("rate fit needs distinct n values");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (const auto& [n, err] : fit.points) {
    const double resid = std::log(err) - (fit.intercept + fit.slope * std::log(n));
    ss_res += resid * resid;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

double strong_form_check(const ReferenceSolution& ref, const Nonlinearity& f, const RhsFunction& h,
                         int sample_count, double spacing) {
  if (sample_count < 1) throw InvalidArgument("strong form check needs at least one sample");
  if (!(spacing > 0.0 && spacing < 0.25)) throw InvalidArgument("strong form spacing must lie in (0, 0.25)");
  double worst = 0.0;
  for (int i = 0; i < sample_count; ++i) {
    const double t = sample_count == 1 ? 0.5 : spacing + (1.0 - 2.0 * spacing) * i / (sample_count - 1);
    const double xpp = (ref.x(t + spacing) - 2.0 * ref.x(t) + ref.x(t - spacing)) / (spacing * spacing);
    worst = std::max(worst, std::abs(xpp - f.eval(t, ref.xdot(t), ref.x(t)) + h.eval(t)));
  }
  return worst;
}

}  // namespace monobvp
