#include "monobvp/mesh.hpp"

#include <cmath>
#include <string>

#include "monobvp/error.hpp"

namespace monobvp {

Grid::Grid(int n) : n_(n) {
  if (n < 2) throw InvalidArgument("grid needs n >= 2, got " + std::to_string(n));
}

MeshFunction::MeshFunction(const Grid& grid)
    : grid_(grid), values_(static_cast<std::size_t>(grid.n()) + 1, 0.0) {}

MeshFunction::MeshFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid.n()) + 1)
    throw InvalidArgument("mesh function needs n+1 values");
  if (values_.front() != 0.0 || values_.back() != 0.0)
    throw InvalidArgument("mesh function must vanish at both boundary nodes");
}

MeshFunction MeshFunction::from_interior(const Grid& grid, std::span<const double> interior) {
  if (interior.size() != static_cast<std::size_t>(grid.interior_size()))
    throw InvalidArgument("interior needs n-1 values");
  MeshFunction u(grid);
  std::copy(interior.begin(), interior.end(), u.values_.begin() + 1);
  return u;
}

MeshFunction MeshFunction::sample(const Grid& grid, const std::function<double(double)>& fn) {
  MeshFunction u(grid);
  for (int k = 1; k < grid.n(); ++k) u.values_[static_cast<std::size_t>(k)] = fn(grid.node(k));
  return u;
}

MeshFunction& MeshFunction::operator+=(const MeshFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

MeshFunction& MeshFunction::operator-=(const MeshFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

MeshFunction& MeshFunction::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

NodeLoad::NodeLoad(const Grid& grid, std::vector<double> loads) : grid_(grid), loads_(std::move(loads)) {
  if (loads_.size() != static_cast<std::size_t>(grid.interior_size()))
    throw InvalidArgument("node load needs n-1 entries");
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (a != b) throw GridMismatch(a.n(), b.n());
}

std::vector<double> forward_difference(const MeshFunction& u) {
  const auto v = u.values();
  std::vector<double> d(v.size() - 1);
  for (std::size_t k = 1; k < v.size(); ++k) d[k - 1] = v[k] - v[k - 1];
  return d;
}

std::vector<double> second_difference(const MeshFunction& u) {
  const auto v = u.values();
  std::vector<double> d(v.size() - 2);
  for (std::size_t k = 1; k + 1 < v.size(); ++k) d[k - 1] = v[k + 1] - 2.0 * v[k] + v[k - 1];
  return d;
}

double inner_e(const MeshFunction& u, const MeshFunction& v) {
  require_same_grid(u.grid(), v.grid());
  const auto a = u.values();
  const auto b = v.values();
  double sum = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) sum += (a[k] - a[k - 1]) * (b[k] - b[k - 1]);
  return sum;
}

double norm_e(const MeshFunction& u) { return std::sqrt(inner_e(u, u)); }

double norm_0(const MeshFunction& u) {
  double sum = 0.0;
  for (double v : u.values()) sum += v * v;
  return std::sqrt(sum);
}

MeshFunction riesz_representative(const NodeLoad& w) {
  const auto m = static_cast<std::size_t>(w.grid().interior_size());
  const std::vector<double> diag(m, 2.0);
  const std::vector<double> off(m - 1, -1.0);
  const auto rho = tridiagonal_solve(off, diag, off, w.loads());
  return MeshFunction::from_interior(w.grid(), rho);
}

std::vector<double> tridiagonal_solve(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super, std::span<const double> rhs) {
  const std::size_t m = diag.size();
  if (m == 0 || rhs.size() != m || sub.size() + 1 != m || super.size() + 1 != m)
    throw InvalidArgument("tridiagonal band sizes are inconsistent");

  constexpr double kPivotFloor = 1e-14;
  std::vector<double> c(m);  // modified super-diagonal
  std::vector<double> x(m);
  double pivot = diag[0];
  if (std::abs(pivot) < kPivotFloor) throw SingularSystem("tridiagonal pivot 0 below 1e-14");
  c[0] = m > 1 ? super[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < m; ++i) {
    pivot = diag[i] - sub[i - 1] * c[i - 1];
    if (std::abs(pivot) < kPivotFloor)
      throw SingularSystem("tridiagonal pivot " + std::to_string(i) + " below 1e-14");
    c[i] = i + 1 < m ? super[i] / pivot : 0.0;
    x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = m - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

}  // namespace monobvp
