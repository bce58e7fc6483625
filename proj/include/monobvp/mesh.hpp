#pragma once

#include <functional>
#include <span>
#include <vector>

namespace monobvp {

/// Uniform mesh on [0,1] with n subintervals and nodes t_k = k/n.
class Grid {
 public:
  explicit Grid(int n);

  int n() const noexcept { return n_; }
  double step() const noexcept { return 1.0 / n_; }
  /// Number of free values x(1..n-1).
  int interior_size() const noexcept { return n_ - 1; }
  /// node(0) == 0 and node(n) == 1 exactly.
  double node(int k) const noexcept { return k == n_ ? 1.0 : static_cast<double>(k) / n_; }

  bool operator==(const Grid&) const = default;

 private:
  int n_;
};

/// Element of the space E: values on nodes 0..n with x(0) = x(n) = 0.
class MeshFunction {
 public:
  /// The zero element of E on `grid`.
  explicit MeshFunction(const Grid& grid);
  /// Takes all n+1 values; the two boundary values must be exactly zero.
  MeshFunction(const Grid& grid, std::vector<double> values);

  static MeshFunction from_interior(const Grid& grid, std::span<const double> interior);
  /// Samples `fn` at interior nodes; boundary values are set to zero.
  static MeshFunction sample(const Grid& grid, const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  double operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> interior() const noexcept {
    return std::span<const double>(values_).subspan(1, values_.size() - 2);
  }

  MeshFunction& operator+=(const MeshFunction& other);
  MeshFunction& operator-=(const MeshFunction& other);
  MeshFunction& operator*=(double scale);

  friend MeshFunction operator+(MeshFunction a, const MeshFunction& b) { return a += b; }
  friend MeshFunction operator-(MeshFunction a, const MeshFunction& b) { return a -= b; }
  friend MeshFunction operator*(double s, MeshFunction a) { return a *= s; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Coefficients of the linear functional y -> sum_{k=1}^{n-1} y(k) loads(k).
class NodeLoad {
 public:
  NodeLoad(const Grid& grid, std::vector<double> loads);

  const Grid& grid() const noexcept { return grid_; }
  /// Entry for node k, 1 <= k <= n-1.
  double at(int k) const { return loads_[static_cast<std::size_t>(k - 1)]; }
  std::span<const double> loads() const noexcept { return loads_; }

 private:
  Grid grid_;
  std::vector<double> loads_;
};

void require_same_grid(const Grid& a, const Grid& b);

/// Entry k-1 holds u(k) - u(k-1), k = 1..n.
std::vector<double> forward_difference(const MeshFunction& u);

/// Entry k-1 holds u(k+1) - 2u(k) + u(k-1), k = 1..n-1.
std::vector<double> second_difference(const MeshFunction& u);

double inner_e(const MeshFunction& u, const MeshFunction& v);
double norm_e(const MeshFunction& u);
double norm_0(const MeshFunction& u);

/// Element rho of E with <rho, y>_E = sum_k y(k) loads(k) for every y in E,
/// i.e. the solution of -D^2 rho(k-1) = loads(k).
MeshFunction riesz_representative(const NodeLoad& w);

/// Thomas elimination without pivoting. `sub[i]` is A(i+1,i) and `super[i]`
/// is A(i,i+1); both have one entry fewer than `diag`. Throws SingularSystem
/// when a pivot falls below 1e-14 in magnitude.
std::vector<double> tridiagonal_solve(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super, std::span<const double> rhs);

}  // namespace monobvp
