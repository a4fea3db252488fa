#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ccpde/energy.hpp"
#include "ccpde/nonlinearity.hpp"
#include "helpers.hpp"

using namespace ccpde;

TEST_CASE("phi on constants") {
  const Grid grid(GridSpec{1, 1.0, 3});
  const double p = 4.0, q = 1.5, lambda = 0.3;
  CHECK(phi(grid, grid.make_field(0.0), p, q, lambda) == 0.0);
  const double c = 0.8;
  const double expected = 1.5 * (std::pow(c, p) / p + lambda * std::pow(c, q) / q);
  CHECK(phi(grid, grid.make_field(c), p, q, lambda) == Catch::Approx(expected).epsilon(1e-14));
}

TEST_CASE("phi scaling decomposition") {
  std::mt19937_64 rng(5);
  const Grid grid(GridSpec{2, 1.0, 9});
  const double p = 4.0, q = 1.5, lambda = 0.3, t = 0.5;
  const Field u = testing::random_field(grid, rng, -1.0, 1.0);
  Field tu = u;
  for (double& x : tu) x *= t;
  double int_p = 0.0, int_q = 0.0;
  for (double x : u) {
    int_p += std::pow(std::abs(x), p);
    int_q += std::pow(std::abs(x), q);
  }
  int_p *= grid.cell_volume();
  int_q *= grid.cell_volume();
  const double expected = std::pow(t, p) / p * int_p + lambda * std::pow(t, q) / q * int_q;
  CHECK(phi(grid, tu, p, q, lambda) == Catch::Approx(expected).epsilon(1e-13));
}

TEST_CASE("psi homogeneity and lower bound") {
  std::mt19937_64 rng(13);
  const Grid grid(GridSpec{2, 2.0, 9});
  const SchrodingerOperator op(grid, PotentialSpec::radial_power(1.0, 3.0));
  CHECK(psi(op, grid.make_field(0.0)) == 0.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Field u = testing::random_field(grid, rng, -1.0, 1.0);
    Field u2 = u;
    for (double& x : u2) x *= 2.0;
    CHECK(psi(op, u2) == Catch::Approx(4.0 * psi(op, u)).epsilon(1e-12));
    CHECK(psi(op, u) >= 0.5 * op.v0() * std::pow(lp_norm(grid, u, 2.0), 2) - 1e-12);
  }
}

TEST_CASE("energy of the zero field vanishes and small-amplitude energies are negative") {
  const Grid grid(GridSpec{1, 4.0, 41});
  const SchrodingerOperator op(grid, PotentialSpec::constant(1.0));
  const double p = 4.0, q = 1.5, lambda = 0.2;
  CHECK(energy_I(op, grid.make_field(0.0), p, q, lambda) == 0.0);

  // profile e >= 0: the t^q concave term dominates as t -> 0
  Field e = grid.make_field();
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = std::max(0.0, 1.0 - std::abs(grid.coords(i)[0]) / 2.0);
  double int_p = 0.0, int_q = 0.0;
  for (double x : e) {
    int_p += std::pow(std::abs(x), p);
    int_q += std::pow(std::abs(x), q);
  }
  int_p *= grid.cell_volume();
  int_q *= grid.cell_volume();

  const double t = 1e-3;
  Field te = e;
  for (double& x : te) x *= t;
  const double direct = energy_I(op, te, p, q, lambda);
  const double expansion =
      std::pow(t, q) * (std::pow(t, 2.0 - q) * psi(op, e) - std::pow(t, p - q) / p * int_p -
                        lambda / q * int_q);
  CHECK(direct < 0.0);
  CHECK(direct == Catch::Approx(expansion).epsilon(1e-10));
}

TEST_CASE("grad_phi on constants saturates the bound") {
  const Grid grid(GridSpec{1, 1.0, 9});
  const double p = 4.0, q = 1.5, lambda = 0.5, r = 1.0;
  CHECK(lp_norm(grid, grad_phi(grid.make_field(0.0), p, q, lambda), infinity) == 0.0);
  const Field c = grid.make_field(r);
  CHECK(lp_norm(grid, grad_phi(c, p, q, lambda), infinity) ==
        Catch::Approx(grad_phi_bound(p, q, lambda, r)).epsilon(1e-14));
  CHECK(grad_phi_bound(p, q, lambda, 0.0) == 0.0);
  CHECK(grad_phi_bound(4.0, 1.5, 0.5, 1.0) == Catch::Approx(1.5));
}

TEST_CASE("gradient bound holds over the box") {
  std::mt19937_64 rng(31);
  const Grid grid(GridSpec{2, 1.0, 7});
  const double p = 4.0, q = 1.5, lambda = 0.3, r = 0.7;
  const double bound = grad_phi_bound(p, q, lambda, r);
  for (int trial = 0; trial < 1000; ++trial) {
    const Field u = testing::random_field(grid, rng, -r, r);
    CHECK(lp_norm(grid, grad_phi(u, p, q, lambda), infinity) <= bound + 1e-13);
  }
}

TEST_CASE("grad_phi matches central finite differences") {
  std::mt19937_64 rng(37);
  const Grid grid(GridSpec{2, 1.0, 7});
  const double p = 4.0, q = 1.5, lambda = 0.3;
  for (int trial = 0; trial < 20; ++trial) {
    const Field u = testing::random_field(grid, rng, 0.1, 0.9);
    const Field w = testing::random_field(grid, rng, -1.0, 1.0);
    const Field g = grad_phi(u, p, q, lambda);
    const double eps = 1e-6;
    Field up = u, dn = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] += eps * w[i];
      dn[i] -= eps * w[i];
    }
    const double fd =
        (phi(grid, up, p, q, lambda) - phi(grid, dn, p, q, lambda)) / (2.0 * eps);
    const double an = l2_inner(grid, g, w);
    CHECK(fd == Catch::Approx(an).epsilon(1e-5));
  }
}

TEST_CASE("detect_delta1 for the cubic") {
  // t^3 <= t^2 exactly up to t = 1
  const auto f = NonlinearitySpec::odd_exp(1, 0.0, 2.0);
  CHECK(detect_delta1(f) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("detect_delta1 for t^3 exp(t^2)") {
  const auto f = NonlinearitySpec::odd_exp(1, 1.0, 2.0);
  // scalar oracle: the crossing solves t exp(t^2) = 1
  double lo = 0.1, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::exp(mid * mid) < 1.0 ? lo : hi) = mid;
  }
  const double oracle = 0.5 * (lo + hi);
  CHECK(oracle == Catch::Approx(0.6529186404).margin(1e-8));
  CHECK(detect_delta1(f) == Catch::Approx(oracle).margin(1e-8));
}

TEST_CASE("wrong nu is rejected") {
  // constructor enforces 2 alpha + 1 > nu for odd_exp
  CHECK_THROWS_AS(NonlinearitySpec::odd_exp(1, 0.0, 4.0), std::invalid_argument);
  // a tabulated cubic with nu = 4 fails the scan at every small scale
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= 64; ++i) {
    const double t = i / 16.0;
    pts.emplace_back(t, t * t * t);
  }
  const auto f = NonlinearitySpec::tabulated_odd(pts, 4.0);
  CHECK_THROWS_AS(detect_delta1(f), std::invalid_argument);
}

TEST_CASE("delta1 of a never-violating nonlinearity is the scan cap") {
  // t^3 exp(-5 t^2) stays below t^2 everywhere
  const auto f = NonlinearitySpec::odd_exp(1, -5.0, 2.0);
  CHECK(detect_delta1(f) == Catch::Approx(10.0));
}

TEST_CASE("truncation: g and G across the level") {
  const double r = 0.55;
  const TruncatedNonlinearity tn(NonlinearitySpec::odd_exp(1, 1.0, 2.0), r);
  // g equals f below r, the linear tail above, continuous and odd
  CHECK(tn.g(0.3) == Catch::Approx(std::pow(0.3, 3) * std::exp(0.09)).epsilon(1e-13));
  CHECK(tn.g(2.0) == Catch::Approx(tn.g(r) / r * 2.0).epsilon(1e-13));
  CHECK(tn.g(-0.3) == Catch::Approx(-tn.g(0.3)).epsilon(1e-14));
  CHECK(tn.g(r * (1 - 1e-10)) == Catch::Approx(tn.g(r * (1 + 1e-10))).epsilon(1e-8));
  // G even and C^1 at the level
  CHECK(tn.G(0.4) == Catch::Approx(tn.G(-0.4)).epsilon(1e-14));
  const double eps = 1e-7;
  CHECK((tn.G(r + eps) - tn.G(r - eps)) / (2 * eps) == Catch::Approx(tn.g(r)).epsilon(1e-6));
}

TEST_CASE("cached primitive agrees with an independent quadrature") {
  const double r = 0.6;
  const TruncatedNonlinearity tn(NonlinearitySpec::odd_exp(2, 1.5, 3.0), r);
  auto f = [](double s) { return std::pow(s, 5) * std::exp(1.5 * s * s); };
  for (double t : {0.05, 0.21, 0.37, 0.5, 0.59}) {
    // fine trapezoid oracle
    const int steps = 200000;
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double a = t * i / steps, b = t * (i + 1) / steps;
      acc += 0.5 * (f(a) + f(b)) * (b - a);
    }
    CHECK(tn.G(t) == Catch::Approx(acc).epsilon(1e-9).margin(1e-12));
  }
}

TEST_CASE("upsilon and its gradient") {
  std::mt19937_64 rng(41);
  const Grid grid(GridSpec{2, 1.0, 7});
  const double q = 1.5, lambda = 0.2, r = 0.5;
  const TruncatedNonlinearity tn(NonlinearitySpec::odd_exp(1, 1.0, 2.0), r);
  CHECK(upsilon(grid, grid.make_field(0.0), tn, q, lambda) == 0.0);

  // Lemma-style bound r^nu + lambda r^(q-1) over K(r), equality for constants
  const double bound = grad_upsilon_bound(tn, q, lambda, r);
  for (int trial = 0; trial < 500; ++trial) {
    const Field u = testing::random_field(grid, rng, -r, r);
    CHECK(lp_norm(grid, grad_upsilon(u, tn, q, lambda), infinity) <= bound + 1e-13);
  }

  // finite-difference consistency
  for (int trial = 0; trial < 10; ++trial) {
    const Field u = testing::random_field(grid, rng, 0.05 * r, 0.95 * r);
    const Field w = testing::random_field(grid, rng, -1.0, 1.0);
    const Field g = grad_upsilon(u, tn, q, lambda);
    const double eps = 1e-7;
    Field up = u, dn = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] += eps * w[i];
      dn[i] -= eps * w[i];
    }
    const double fd =
        (upsilon(grid, up, tn, q, lambda) - upsilon(grid, dn, tn, q, lambda)) / (2.0 * eps);
    CHECK(fd == Catch::Approx(l2_inner(grid, g, w)).epsilon(1e-5));
  }
}

TEST_CASE("evenness of the energy pieces") {
  std::mt19937_64 rng(43);
  const Grid grid(GridSpec{2, 2.0, 9});
  const SchrodingerOperator op(grid, PotentialSpec::radial_power(1.0, 3.0));
  const TruncatedNonlinearity tn(NonlinearitySpec::odd_exp(1, 0.5, 2.0), 0.6);
  for (int trial = 0; trial < 20; ++trial) {
    const Field u = testing::random_field(grid, rng, -1.0, 1.0);
    Field m = u;
    for (double& x : m) x = -x;
    CHECK(phi(grid, u, 4.0, 1.5, 0.3) == Catch::Approx(phi(grid, m, 4.0, 1.5, 0.3)).margin(1e-13));
    CHECK(psi(op, u) == Catch::Approx(psi(op, m)).margin(1e-12));
    CHECK(upsilon(grid, u, tn, 1.5, 0.3) ==
          Catch::Approx(upsilon(grid, m, tn, 1.5, 0.3)).margin(1e-13));
  }
}
