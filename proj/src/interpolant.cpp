#include "monobvp/interpolant.hpp"

#include <algorithm>
#include <cmath>

namespace monobvp {

InterpolantPair::InterpolantPair(MeshFunction source) : source_(std::move(source)) {}

int InterpolantPair::cell(double t) const {
  const Grid& g = source_.grid();
  if (t >= 1.0) return g.n();
  if (t <= 0.0) return 0;
  int k = std::clamp(static_cast<int>(std::floor(t * g.n())), 0, g.n() - 1);
  // t * n can round across a node; settle on node(k) <= t < node(k+1)
  if (g.node(k) > t) --k;
  if (g.node(k + 1) <= t) ++k;
  return k;
}

double InterpolantPair::x_bar(double t) const {
  const Grid& g = source_.grid();
  const int k = cell(t);
  if (k >= g.n()) return source_[g.n()];
  const double dn = g.n();
  return source_[k] + dn * (source_[k + 1] - source_[k]) * (t - g.node(k));
}

double InterpolantPair::v_bar(double t) const {
  const Grid& g = source_.grid();
  const int n = g.n();
  const double dn = n;
  const int k = cell(t);
  if (k == 0) return dn * (source_[1] - source_[0]);
  // left limit at t = 1 equals n*Dx(n-1)
  if (k >= n) return dn * (source_[n] - source_[n - 1]);
  const double second = source_[k + 1] - 2.0 * source_[k] + source_[k - 1];
  return dn * (source_[k] - source_[k - 1]) + dn * dn * second * (t - g.node(k));
}

double InterpolantPair::v_bar_square_integral() const {
  const int n = source_.grid().n();
  const double dn = n;
  double first = dn * (source_[1] - source_[0]);
  double sum = first * first;
  for (int k = 1; k < n; ++k) {
    const double a = dn * (source_[k] - source_[k - 1]);
    const double b = dn * (source_[k + 1] - source_[k]);
    sum += (a * a + a * b + b * b) / 3.0;
  }
  return sum / dn;
}

double InterpolantPair::max_abs_x_bar() const {
  double best = 0.0;
  for (double v : source_.values()) best = std::max(best, std::abs(v));
  return best;
}

InterpolantPair interpolants(const MeshFunction& x) { return InterpolantPair(x); }

}  // namespace monobvp
