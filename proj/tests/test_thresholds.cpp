#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ccpde/thresholds.hpp"
#include "ccpde/validate.hpp"

using namespace ccpde;

namespace {

// independent oracle: golden-section inner minimization of
// h(r) = r^(p-2) + lambda r^(q-2) over log r, bisection on lambda
double oracle_min_h(double p, double q, double lambda) {
  auto h = [&](double r) { return std::pow(r, p - 2.0) + lambda * std::pow(r, q - 2.0); };
  double a = std::log(1e-9), b = std::log(1e9);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  for (int it = 0; it < 300; ++it) {
    if (h(std::exp(c)) < h(std::exp(d)))
      b = d;
    else
      a = c;
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  return h(std::exp(0.5 * (a + b)));
}

double oracle_lambda_crit(double p, double q, double v0) {
  double lo = 1e-10, hi = 1e10;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (oracle_min_h(p, q, mid) < v0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("critical lambda for p=4, q=1.5, V0=1") {
  const double computed = lambda_critical(4.0, 1.5, 1.0);
  // closed form: the stationary point is r* = (lambda/4)^(2/5), and the
  // minimum value 5 (lambda/4)^(4/5) equals 1 exactly at lambda = 4 * 5^(-5/4)
  const double closed_form = 4.0 * std::pow(5.0, -1.25);
  CHECK(computed == Catch::Approx(closed_form).margin(1e-10));
  CHECK(computed == Catch::Approx(oracle_lambda_crit(4.0, 1.5, 1.0)).margin(1e-9));
  CHECK(computed == Catch::Approx(0.534992243981138).margin(1e-9));
}

TEST_CASE("critical lambda defect at the stationary point") {
  const double p = 3.0, q = 1.5, v0 = 1.0;
  const double lam = lambda_critical(p, q, v0);
  const double rstar = std::pow(lam * (2.0 - q) / (p - 2.0), 1.0 / (p - q));
  const double defect = std::abs(std::pow(rstar, p - 2.0) + lam * std::pow(rstar, q - 2.0) - v0);
  CHECK(defect <= 1e-10);
  CHECK(lam == Catch::Approx(oracle_lambda_crit(p, q, v0)).margin(1e-9));
}

TEST_CASE("V0 scaling identity") {
  // h_lambda(c^{1/(p-2)} r) = c h_{lambda'}(r) with lambda' = lambda c^{(q-p)/(p-2)},
  // so Lambda_0(c V0) = c^{(p-q)/(p-2)} Lambda_0(V0)
  const double p = 4.0, q = 1.5, c = 2.0;
  const double l1 = lambda_critical(p, q, 1.0);
  const double l2 = lambda_critical(p, q, c);
  CHECK(l2 == Catch::Approx(std::pow(c, (p - q) / (p - 2.0)) * l1).epsilon(1e-9));
  CHECK(l2 > l1);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(lambda_critical(1.5, 1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_critical(4.0, 2.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_critical(4.0, 1.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(admissible_radii(PowerParams{4.0, 1.5, -0.1, 1.0}), std::invalid_argument);
}

TEST_CASE("small-lambda limit of the admissible interval") {
  const auto res = admissible_radii(PowerParams{4.0, 1.5, 1e-9, 1.0});
  REQUIRE(res.regime == RadiusRegime::Interval);
  CHECK(res.r2 == Catch::Approx(1.0).margin(1e-6));  // V0^{1/(p-2)}
  CHECK(res.r1 <= 1e-6);
  CHECK(res.r1 > 0.0);
}

TEST_CASE("tangent regime at the critical value") {
  const double lam0 = lambda_critical(4.0, 1.5, 1.0);
  const auto res = admissible_radii(PowerParams{4.0, 1.5, lam0, 1.0});
  REQUIRE(res.regime == RadiusRegime::Tangent);
  CHECK(res.r_star == Catch::Approx(std::pow(lam0 / 4.0, 0.4)).epsilon(1e-10));
  CHECK(res.defect_r1 <= 1e-10);
}

TEST_CASE("empty regime above the critical value") {
  const auto res = admissible_radii(PowerParams{4.0, 1.5, 1.0, 1.0});
  CHECK(res.regime == RadiusRegime::Empty);
}

TEST_CASE("endpoint consistency on the interval") {
  const auto res = admissible_radii(PowerParams{4.0, 1.5, 0.25, 1.0});
  REQUIRE(res.regime == RadiusRegime::Interval);
  CHECK(res.r1 < res.r2);
  CHECK(res.defect_r1 <= 1e-10);
  CHECK(res.defect_r2 <= 1e-10);
  const double mid = 0.5 * (res.r1 + res.r2);
  CHECK(std::pow(mid, 2.0) + 0.25 * std::pow(mid, -0.5) < 1.0);
  // the inequality form r^(p-1) + lambda r^(q-1) <= V0 r at the endpoints
  for (double r : {res.r1, res.r2})
    CHECK(std::pow(r, 3.0) + 0.25 * std::pow(r, 0.5) ==
          Catch::Approx(r).margin(1e-9));
}

TEST_CASE("2-d case reduces to the power case when nu = 2 and delta1 is huge") {
  // h2(r) = r + lambda r^(q-2) is the p = 3 profile
  const double q = 1.5, v0 = 1.0, lambda = 0.2;
  const auto res2 = admissible_radii_2d(2.0, q, v0, 1e12, lambda);
  const auto res3 = admissible_radii(PowerParams{3.0, q, lambda, v0});
  REQUIRE(res2.regime == RadiusRegime::Interval);
  REQUIRE(res3.regime == RadiusRegime::Interval);
  CHECK(res2.r1 == Catch::Approx(res3.r1).epsilon(1e-10));
  CHECK(res2.r2 == Catch::Approx(res3.r2).epsilon(1e-10));
  CHECK(res2.lambda_crit == Catch::Approx(res3.lambda_crit).epsilon(1e-10));
}

TEST_CASE("delta1 cap can empty the interval") {
  const double q = 1.5, v0 = 1.0, lambda = 0.2;
  const auto full = admissible_radii_2d(2.0, q, v0, 1e12, lambda);
  REQUIRE(full.regime == RadiusRegime::Interval);
  const auto capped = admissible_radii_2d(2.0, q, v0, full.r1 / 2.0, lambda);
  CHECK(capped.regime == RadiusRegime::Empty);
  CHECK(capped.delta1_binding);
}

TEST_CASE("2-d interval endpoints are roots") {
  const auto res = admissible_radii_2d(3.0, 1.5, 1.0, 1.0, 0.1);
  REQUIRE(res.regime == RadiusRegime::Interval);
  CHECK_FALSE(res.delta1_binding);
  for (double r : {res.r1, res.r2}) {
    const double defect = std::abs(std::pow(r, 2.0) + 0.1 * std::pow(r, -0.5) - 1.0);
    CHECK(defect <= 1e-10);
  }
  CHECK(res.r2 < 1.0);
}

TEST_CASE("delta1 cap shrinks the upper endpoint") {
  const double q = 1.5, v0 = 1.0, lambda = 0.05;
  const auto full = admissible_radii_2d(2.0, q, v0, 1e12, lambda);
  REQUIRE(full.regime == RadiusRegime::Interval);
  const double cap = 0.5 * (full.r1 + full.r2);
  const auto capped = admissible_radii_2d(2.0, q, v0, cap, lambda);
  REQUIRE(capped.regime == RadiusRegime::Interval);
  CHECK(capped.delta1_binding);
  CHECK(capped.r2 <= cap);
  CHECK(capped.r1 == Catch::Approx(full.r1).epsilon(1e-10));
  // here the cap sits above r*(Lambda_unc), so Lambda_1 is unaffected
  CHECK(capped.lambda_crit == Catch::Approx(full.lambda_crit).epsilon(1e-12));
}

TEST_CASE("a small delta1 cap lowers Lambda_1") {
  // nu = 2: h2(r) = r + lambda r^(-1/2); with cap delta1 = 0.15 the critical
  // value solves r1(lambda) = 0.15, i.e. lambda = (1 - 0.15) sqrt(0.15)
  const double q = 1.5, v0 = 1.0, cap = 0.15;
  const double analytic = (1.0 - cap) * std::sqrt(cap);
  const double lam_unc = lambda_critical(3.0, q, v0);
  REQUIRE(analytic < lam_unc);
  const double lam1 = lambda_critical_2d(2.0, q, v0, cap);
  CHECK(lam1 == Catch::Approx(analytic).epsilon(1e-10));
  // feasibility flips across Lambda_1
  CHECK(admissible_radii_2d(2.0, q, v0, cap, lam1 * 0.999).regime == RadiusRegime::Interval);
  CHECK(admissible_radii_2d(2.0, q, v0, cap, lam1 * 1.001).regime == RadiusRegime::Empty);
  CHECK(admissible_radii_2d(2.0, q, v0, cap, lam1 * 1.001).delta1_binding);
}

TEST_CASE("trichotomy agrees with a brute-force scan") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pd(2.1, 9.0), qd(1.05, 1.95), vd(0.1, 10.0),
      ld(0.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double p = pd(rng), q = qd(rng), v0 = vd(rng);
    const double lambda = std::max(1e-8, ld(rng)) * lambda_critical(p, q, v0);
    std::string why;
    INFO(why);
    CHECK(checks::trichotomy_matches(p, q, v0, lambda, 20001, &why));
  }
}
