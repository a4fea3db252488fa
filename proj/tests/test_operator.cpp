#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ccpde/operator.hpp"
#include "helpers.hpp"

using namespace ccpde;

TEST_CASE("1-d stencil entries") {
  // h = 0.5, V = 1: diagonal 2/h^2 + 1 = 9, off-diagonal -1/h^2 = -4
  const Grid grid(GridSpec{1, 1.0, 3});
  const SchrodingerOperator op(grid, PotentialSpec::constant(1.0));
  const auto dense = testing::dense_matrix(op);
  CHECK(dense[0][0] == Catch::Approx(9.0));
  CHECK(dense[1][1] == Catch::Approx(9.0));
  CHECK(dense[2][2] == Catch::Approx(9.0));
  CHECK(dense[0][1] == Catch::Approx(-4.0));
  CHECK(dense[1][0] == Catch::Approx(-4.0));
  CHECK(dense[1][2] == Catch::Approx(-4.0));
  CHECK(dense[0][2] == 0.0);

  Field u = {0.0, 1.0, 0.0};
  const Field au = op.apply(u);
  CHECK(au[0] == Catch::Approx(-4.0));
  CHECK(au[1] == Catch::Approx(9.0));
  CHECK(au[2] == Catch::Approx(-4.0));
}

TEST_CASE("potential validation") {
  const Grid grid2(GridSpec{2, 1.0, 5});
  // s must exceed the dimension for 1/V to be integrable
  CHECK_THROWS_AS(SchrodingerOperator(grid2, PotentialSpec::radial_power(1.0, 2.0)),
                  std::invalid_argument);
  CHECK_NOTHROW(SchrodingerOperator(grid2, PotentialSpec::radial_power(1.0, 2.5)));

  // anisotropic example: accepted for alpha > N, nodal minimum >= 1
  const Grid gridA(GridSpec{2, 2.0, 9});
  const auto aniso = PotentialSpec::anisotropic(3.0);
  const SchrodingerOperator opA(gridA, aniso);
  double vmin = infinity;
  for (std::size_t i = 0; i < gridA.size(); ++i)
    vmin = std::min(vmin, aniso.value(gridA.coords(i), 2));
  CHECK(vmin >= 1.0);
  CHECK_THROWS_AS(SchrodingerOperator(gridA, PotentialSpec::anisotropic(1.5)),
                  std::invalid_argument);

  // declared V0 above the actual nodal minimum is a wrong certificate
  auto bad = PotentialSpec::constant(1.0);
  bad.v0 = 2.0;
  CHECK_THROWS_AS(SchrodingerOperator(grid2, bad), std::invalid_argument);

  auto nan_table = PotentialSpec::tabulated(Field(25, 1.0), 1.0);
  nan_table.table[7] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(SchrodingerOperator(grid2, nan_table), std::invalid_argument);
}

TEST_CASE("apply basics") {
  const Grid grid(GridSpec{2, 3.0, 7});
  const SchrodingerOperator op(grid, PotentialSpec::radial_power(1.0, 3.0));
  CHECK(lp_norm(grid, op.apply(grid.make_field(0.0)), infinity) == 0.0);
  CHECK_THROWS_AS(op.apply(Field(5, 1.0)), std::invalid_argument);
}

TEST_CASE("solve_linear round trip and zero") {
  std::mt19937_64 rng(3);
  const Grid grid(GridSpec{2, 4.0, 13});
  const SchrodingerOperator op(grid, PotentialSpec::radial_power(1.0, 3.0));
  CHECK(lp_norm(grid, op.solve_linear(grid.make_field(0.0), 1e-10), infinity) == 0.0);
  CHECK_THROWS_AS(op.solve_linear(grid.make_field(1.0), 2.0), std::invalid_argument);

  const Field v0 = testing::random_field(grid, rng, -1.0, 1.0);
  const Field g = op.apply(v0);
  const Field v = op.solve_linear(g, 1e-12);
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    diff = std::max(diff, std::abs(v[i] - v0[i]));
    scale = std::max(scale, std::abs(v0[i]));
  }
  CHECK(diff <= 1e-8 * scale);
}

TEST_CASE("constant forcing develops the constant interior plateau") {
  // -v'' + v = 1 on a wide box: v = 1 - cosh(x)/cosh(L), so the deviation
  // from the plateau is below 1e-3 once cosh(x) <= 1e-3 cosh(L), i.e. |x| < 1
  const Grid grid(GridSpec{1, 8.0, 255});
  const SchrodingerOperator op(grid, PotentialSpec::constant(1.0));
  const Field v = op.solve_linear(grid.make_field(1.0), 1e-12);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.coords(i)[0];
    if (std::abs(x) <= 0.5) CHECK(v[i] == Catch::Approx(1.0).margin(1e-3));
    // and against the closed-form solution everywhere
    CHECK(v[i] == Catch::Approx(1.0 - std::cosh(x) / std::cosh(8.0)).margin(2e-4));
  }
}

TEST_CASE("max principle bound") {
  const Grid grid(GridSpec{1, 2.0, 31});
  const SchrodingerOperator op(grid, PotentialSpec::constant(2.0));

  SECTION("zero forcing") {
    const Field g = grid.make_field(0.0);
    const auto rep = max_principle_bound(op, g, op.solve_linear(g, 1e-10));
    CHECK(rep.lhs == 0.0);
    CHECK(rep.holds);
  }

  SECTION("constant forcing, exact constant bound") {
    const Field g = grid.make_field(1.0);
    const Field v = op.solve_linear(g, 1e-12);
    const auto rep = max_principle_bound(op, g, v);
    CHECK(rep.holds);
    CHECK(lp_norm(grid, v, infinity) <= 0.5 + rep.slack / 2.0 + 1e-12);
  }
}

TEST_CASE("max principle on random forcings via the dense inverse") {
  // tiny grid: the dense inverse of an M-matrix is entrywise nonnegative,
  // which is the engine behind the discrete estimate with zero slack
  std::mt19937_64 rng(17);
  const Grid grid(GridSpec{2, 1.5, 5});
  const SchrodingerOperator op(grid, PotentialSpec::radial_power(1.0, 3.0));
  const auto inv = testing::dense_inverse(testing::dense_matrix(op));
  double min_entry = infinity;
  for (const auto& row : inv)
    for (double x : row) min_entry = std::min(min_entry, x);
  CHECK(min_entry >= -1e-14);

  for (int trial = 0; trial < 1000; ++trial) {
    const Field g = testing::random_field(grid, rng, 0.0, 2.0);
    const Field v = testing::dense_solve(testing::dense_matrix(op), g);
    // dense solve: slack-free check
    CHECK(op.v0() * lp_norm(grid, v, infinity) <=
          lp_norm(grid, g, infinity) * (1.0 + 1e-12));
  }
}

TEST_CASE("positivity preservation by the iterative solver") {
  std::mt19937_64 rng(23);
  const Grid grid(GridSpec{2, 3.0, 11});
  const SchrodingerOperator op(grid, PotentialSpec::radial_power(1.0, 3.0));
  for (int trial = 0; trial < 50; ++trial) {
    const Field g = testing::random_field(grid, rng, 0.0, 1.0);
    const Field v = op.solve_linear(g, 1e-12);
    for (double t : v) CHECK(t >= -1e-10);
  }
}

TEST_CASE("ev_norm basics and lower bound") {
  std::mt19937_64 rng(29);
  const Grid grid(GridSpec{2, 2.0, 9});
  const SchrodingerOperator op(grid, PotentialSpec::radial_power(1.0, 3.0));
  CHECK(op.ev_norm(grid.make_field(0.0)) == 0.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Field u = testing::random_field(grid, rng, -2.0, 2.0);
    const double ev = op.ev_norm(u);
    CHECK(ev * ev >= op.v0() * std::pow(lp_norm(grid, u, 2.0), 2) - 1e-10);
  }
}

TEST_CASE("ev_norm matches the Rayleigh quotient of the first box mode") {
  const double L = 1.0;
  const Grid grid(GridSpec{1, L, 799});
  const SchrodingerOperator op(grid, PotentialSpec::constant(1.0));
  Field u = grid.make_field();
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = std::sin(std::numbers::pi * (grid.coords(i)[0] + L) / (2.0 * L));
  const double expected = std::sqrt(std::pow(std::numbers::pi / (2.0 * L), 2) + 1.0) *
                          lp_norm(grid, u, 2.0);
  CHECK(op.ev_norm(u) == Catch::Approx(expected).margin(1e-3));
}

TEST_CASE("exact symmetry of the assembled matrix") {
  const Grid grid(GridSpec{3, 1.0, 4});
  const SchrodingerOperator op(grid, PotentialSpec::radial_power(1.0, 4.0));
  const auto dense = testing::dense_matrix(op);
  for (std::size_t i = 0; i < dense.size(); ++i)
    for (std::size_t j = 0; j < dense.size(); ++j) CHECK(dense[i][j] == dense[j][i]);
}

TEST_CASE("coo export format") {
  const Grid grid(GridSpec{1, 1.0, 3});
  const SchrodingerOperator op(grid, PotentialSpec::constant(1.0));
  std::ostringstream os;
  op.write_coo(os);
  std::istringstream is(os.str());
  std::size_t row, col;
  double val;
  std::size_t count = 0;
  double sum = 0.0;
  while (is >> row >> col >> val) {
    ++count;
    sum += val;
    CHECK(row < 3);
    CHECK(col < 3);
  }
  CHECK(count == 7);  // 3 diagonal + 4 off-diagonal entries
  CHECK(sum == Catch::Approx(3 * 9.0 - 4 * 4.0));
}
