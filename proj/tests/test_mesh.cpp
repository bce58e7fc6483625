#include <cmath>
#include <vector>

#include "doctest.h"
#include "monobvp/error.hpp"
#include "monobvp/mesh.hpp"
#include "monobvp/random.hpp"

using namespace monobvp;

namespace {

MeshFunction random_mesh_function(const Grid& grid, Rng& rng) {
  std::vector<double> interior(static_cast<std::size_t>(grid.interior_size()));
  for (double& v : interior) v = rng.uniform(-3.0, 3.0);
  return MeshFunction::from_interior(grid, interior);
}

/// Dense Gaussian elimination with partial pivoting, used as an independent
/// oracle for the banded solver.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t m = b.size();
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < m; ++r) {
      const double factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k < m; ++k) a[r][k] -= factor * a[c][k];
      b[r] -= factor * b[c];
    }
  }
  std::vector<double> x(m);
  for (std::size_t i = m; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < m; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST_CASE("grid rejects fewer than two cells and places nodes exactly") {
  CHECK_THROWS_AS(Grid(1), InvalidArgument);
  CHECK_THROWS_AS(Grid(0), InvalidArgument);
  const Grid g(3);
  CHECK(g.interior_size() == 2);
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(3) == 1.0);
  CHECK(g.step() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("mesh function enforces the boundary condition and grid size") {
  const Grid g(3);
  CHECK_THROWS_AS(MeshFunction(g, {0.0, 1.0, 3.0}), InvalidArgument);
  CHECK_THROWS_AS(MeshFunction(g, {1e-300, 1.0, 3.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(MeshFunction(g, {0.0, 1.0, 3.0, 1.0}), InvalidArgument);
  const MeshFunction u(g, {0.0, 1.0, 3.0, 0.0});
  CHECK(u.interior().size() == 2);
  CHECK(u[2] == 3.0);
  const MeshFunction s = MeshFunction::sample(g, [](double t) { return t + 1.0; });
  CHECK(s[0] == 0.0);
  CHECK(s[3] == 0.0);
  CHECK(s[1] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("arithmetic on different grids raises GridMismatch") {
  MeshFunction a(Grid(3));
  const MeshFunction b(Grid(4));
  CHECK_THROWS_AS(a += b, GridMismatch);
  CHECK_THROWS_AS(inner_e(a, b), GridMismatch);
}

TEST_CASE("forward difference") {
  const Grid g3(3);
  const auto d = forward_difference(MeshFunction(g3, {0.0, 1.0, 3.0, 0.0}));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == 2.0);
  CHECK(d[2] == -3.0);
  for (double v : forward_difference(MeshFunction(Grid(7)))) CHECK(v == 0.0);
  const double c = -2.75;
  const auto e = forward_difference(MeshFunction(Grid(2), {0.0, c, 0.0}));
  CHECK(e[0] == c);
  CHECK(e[1] == -c);
}

TEST_CASE("second difference") {
  const auto d = second_difference(MeshFunction(Grid(3), {0.0, 1.0, 3.0, 0.0}));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == -5.0);
  // An affine function vanishing at both ends is identically zero.
  for (double v : second_difference(MeshFunction(Grid(5)))) CHECK(v == 0.0);
  const auto e = second_difference(MeshFunction(Grid(2), {0.0, 4.5, 0.0}));
  REQUIRE(e.size() == 1);
  CHECK(e[0] == -9.0);
}

TEST_CASE("inner product and norms") {
  const Grid g(3);
  const MeshFunction u(g, {0.0, 1.0, 3.0, 0.0});
  CHECK(inner_e(u, u) == 14.0);
  CHECK(norm_e(u) == doctest::Approx(std::sqrt(14.0)).epsilon(1e-15));
  CHECK(norm_0(u) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  const MeshFunction zero(g);
  CHECK(inner_e(u, zero) == 0.0);
  CHECK(norm_e(zero) == 0.0);
  CHECK(norm_0(zero) == 0.0);

  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Grid gr(2 + trial % 40);
    const MeshFunction r = random_mesh_function(gr, rng);
    CHECK(inner_e(r, r) == doctest::Approx(norm_e(r) * norm_e(r)).epsilon(1e-13));
    CHECK(norm_e(r) <= 2.0 * norm_0(r) * (1.0 + 1e-14));
  }
}

TEST_CASE("summation by parts") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Grid g(2 + trial % 50);
    const MeshFunction u = random_mesh_function(g, rng);
    const MeshFunction y = random_mesh_function(g, rng);
    const auto d2 = second_difference(u);
    double rhs = 0.0;
    for (int k = 1; k < g.n(); ++k) rhs -= y[k] * d2[static_cast<std::size_t>(k - 1)];
    const double lhs = inner_e(u, y);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)) * g.n());
  }
}

TEST_CASE("Riesz representative") {
  const MeshFunction r2 = riesz_representative(NodeLoad(Grid(2), {1.0}));
  CHECK(r2[1] == doctest::Approx(0.5));

  const MeshFunction r4 = riesz_representative(NodeLoad(Grid(4), {0.0, 1.0, 0.0}));
  CHECK(r4[1] == doctest::Approx(0.5));
  CHECK(r4[2] == doctest::Approx(1.0));
  CHECK(r4[3] == doctest::Approx(0.5));

  const MeshFunction r0 = riesz_representative(NodeLoad(Grid(6), std::vector<double>(5, 0.0)));
  CHECK(norm_e(r0) == 0.0);

  CHECK_THROWS_AS(NodeLoad(Grid(4), {1.0, 2.0}), InvalidArgument);

  // Defining property: <rho, y>_E = sum y(k) loads(k) for every y.
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Grid g(2 + trial);
    std::vector<double> loads(static_cast<std::size_t>(g.interior_size()));
    for (double& l : loads) l = rng.uniform(-1.0, 1.0);
    const NodeLoad w(g, loads);
    const MeshFunction rho = riesz_representative(w);
    const MeshFunction y = random_mesh_function(g, rng);
    double pairing = 0.0;
    for (int k = 1; k < g.n(); ++k) pairing += y[k] * w.at(k);
    CHECK(inner_e(rho, y) == doctest::Approx(pairing).epsilon(1e-10));
  }
}

TEST_CASE("tridiagonal solve") {
  const std::vector<double> diag{2.0, 2.0, 2.0}, off{-1.0, -1.0}, rhs{0.0, 1.0, 0.0};
  const auto x = tridiagonal_solve(off, diag, off, rhs);
  CHECK(x[0] == doctest::Approx(0.5));
  CHECK(x[1] == doctest::Approx(1.0));
  CHECK(x[2] == doctest::Approx(0.5));

  const std::vector<double> ones(4, 1.0), zeros(3, 0.0), r{1.5, -2.0, 7.0, 0.25};
  const auto id = tridiagonal_solve(zeros, ones, zeros, r);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(id[i] == r[i]);

  const std::vector<double> d1{2.0}, b1{3.0}, none;
  CHECK(tridiagonal_solve(none, d1, none, b1)[0] == 1.5);

  const std::vector<double> sing{0.0, 1.0};
  CHECK_THROWS_AS(tridiagonal_solve(std::vector<double>{1.0}, sing, std::vector<double>{1.0},
                                    std::vector<double>{1.0, 1.0}),
                  SingularSystem);
  CHECK_THROWS_AS(tridiagonal_solve(off, diag, off, std::vector<double>{1.0}), InvalidArgument);

  // Random diagonally dominant, nonsymmetric systems against dense elimination.
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial);
    std::vector<double> sub(m - 1), sup(m - 1), dg(m), b(m);
    for (auto& v : sub) v = rng.uniform(-1.0, 1.0);
    for (auto& v : sup) v = rng.uniform(-1.0, 1.0);
    for (auto& v : dg) v = rng.uniform(2.5, 4.0);
    for (auto& v : b) v = rng.uniform(-5.0, 5.0);
    std::vector<std::vector<double>> dense(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) dense[i][i] = dg[i];
    for (std::size_t i = 0; i + 1 < m; ++i) {
      dense[i + 1][i] = sub[i];
      dense[i][i + 1] = sup[i];
    }
    const auto fast = tridiagonal_solve(sub, dg, sup, b);
    const auto slow = dense_solve(dense, b);
    for (std::size_t i = 0; i < m; ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
  }
}
