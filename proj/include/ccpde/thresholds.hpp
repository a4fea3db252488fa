#pragma once

// Scalar threshold analysis for the admissible-radius inequality
//   r^(p-1) + lambda r^(q-1) <= V0 r,  equivalently  h(r) <= V0 with
//   h(r) = r^(p-2) + lambda r^(q-2),
// and its two-dimensional truncated variant with h2(r) = r^(nu-1) + lambda r^(q-2)
// capped by r < delta1. h is unimodal on (0,inf) with a unique interior
// minimum, so for lambda below the critical value exactly two roots of
// h = V0 exist and bracketing bisection from the minimum outward is safe.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccpde {

struct PowerParams {
  double p = 4.0;       // convex exponent, p > 2
  double q = 1.5;       // concave exponent, 1 < q < 2
  double lambda = 0.1;  // > 0
  double v0 = 1.0;      // > 0

  void validate() const {
    if (!(q > 1.0 && q < 2.0 && p > 2.0))
      throw std::invalid_argument("PowerParams: need 1 < q < 2 < p");
    if (!(lambda > 0.0)) throw std::invalid_argument("PowerParams: lambda must be positive");
    if (!(v0 > 0.0)) throw std::invalid_argument("PowerParams: V0 must be positive");
  }
};

enum class RadiusRegime { Interval, Tangent, Empty };

inline const char* to_string(RadiusRegime r) {
  switch (r) {
    case RadiusRegime::Interval: return "interval";
    case RadiusRegime::Tangent: return "tangent";
    case RadiusRegime::Empty: return "empty";
  }
  return "?";
}

struct ThresholdResult {
  double lambda_crit = std::numeric_limits<double>::quiet_NaN();
  RadiusRegime regime = RadiusRegime::Empty;
  double r1 = std::numeric_limits<double>::quiet_NaN();
  double r2 = std::numeric_limits<double>::quiet_NaN();
  double r_star = std::numeric_limits<double>::quiet_NaN();
  double defect_r1 = std::numeric_limits<double>::quiet_NaN();
  double defect_r2 = std::numeric_limits<double>::quiet_NaN();
  bool delta1_binding = false;
};

namespace detail {

// h(r) = r^a + lambda r^b with a > 0 and b < 0 shared by both cases
// (a = p-2, b = q-2 for the power case; a = nu-1, b = q-2 truncated).
struct RadiusProfile {
  double a, b, lambda;

  double value(double r) const { return std::pow(r, a) + lambda * std::pow(r, b); }

  double stationary_point() const { return std::pow(lambda * (-b) / a, 1.0 / (a - b)); }

  double min_value() const { return value(stationary_point()); }

  // root of value(r) = v0 in a monotone bracket [lo, hi]
  double root_in(double lo, double hi, double v0) const {
    double flo = value(lo) - v0;
    for (int it = 0; it < 240; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // interval exhausted in doubles
      const double fm = value(mid) - v0;
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
      if ((hi - lo) <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
  }

  // both roots when min_value() < v0; geometric expansion from the minimum
  // outward keeps the bracket width proportional to the root
  void roots(double v0, double& r1, double& r2) const {
    const double rs = stationary_point();
    double lo = rs;
    do { lo *= 0.5; } while (value(lo) < v0);
    r1 = root_in(lo, 2.0 * lo, v0);
    double hi = rs;
    do { hi *= 2.0; } while (value(hi) < v0);
    r2 = root_in(0.5 * hi, hi, v0);
  }
};

// largest lambda with min_r h(r) <= v0; min_value is strictly increasing in
// lambda, so bisection on lambda converges unconditionally
inline double critical_lambda(double a, double b, double v0) {
  auto minh = [&](double lam) { return RadiusProfile{a, b, lam}.min_value(); };
  double lo = 1.0, hi = 1.0;
  while (minh(lo) > v0) lo *= 0.5;
  while (minh(hi) < v0) hi *= 2.0;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 220; ++it) {
    mid = 0.5 * (lo + hi);
    (minh(mid) < v0 ? lo : hi) = mid;
    if ((hi - lo) <= 2e-16 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Lambda_0(p, q, V0): the unique lambda for which min_r [r^(p-2) + lambda r^(q-2)] = V0.
inline double lambda_critical(double p, double q, double v0) {
  PowerParams chk{p, q, 1.0, v0};
  chk.validate();
  return detail::critical_lambda(p - 2.0, q - 2.0, v0);
}

inline constexpr double tangent_rel_tol = 1e-10;  // width of the measure-zero tangent regime

namespace detail {

inline ThresholdResult classify(const RadiusProfile& prof, double v0, double lambda,
                                double lambda_crit) {
  ThresholdResult res;
  res.lambda_crit = lambda_crit;
  res.r_star = prof.stationary_point();
  if (std::abs(lambda - lambda_crit) <= tangent_rel_tol * lambda_crit) {
    res.regime = RadiusRegime::Tangent;
    res.defect_r1 = res.defect_r2 = std::abs(prof.value(res.r_star) - v0);
    return res;
  }
  if (lambda > lambda_crit) {
    res.regime = RadiusRegime::Empty;
    return res;
  }
  res.regime = RadiusRegime::Interval;
  prof.roots(v0, res.r1, res.r2);
  res.defect_r1 = std::abs(prof.value(res.r1) - v0);
  res.defect_r2 = std::abs(prof.value(res.r2) - v0);
  return res;
}

}  // namespace detail

/// Admissible radii [r1, r2] of the power case: r in [r1, r2] iff
/// r^(p-1) + lambda r^(q-1) <= V0 r.
inline ThresholdResult admissible_radii(const PowerParams& params) {
  params.validate();
  detail::RadiusProfile prof{params.p - 2.0, params.q - 2.0, params.lambda};
  const double lc = detail::critical_lambda(prof.a, prof.b, params.v0);
  return detail::classify(prof, params.v0, params.lambda, lc);
}

/// Lambda_1 for the truncated two-dimensional case: the largest lambda such
/// that the set {r < delta1 : r^nu + lambda r^(q-1) <= V0 r} is nonempty.
inline double lambda_critical_2d(double nu, double q, double v0, double delta1) {
  if (!(nu > 1.0)) throw std::invalid_argument("lambda_critical_2d: need nu > 1");
  if (!(q > 1.0 && q < 2.0)) throw std::invalid_argument("lambda_critical_2d: need 1 < q < 2");
  if (!(v0 > 0.0)) throw std::invalid_argument("lambda_critical_2d: need V0 > 0");
  if (!(delta1 > 0.0)) throw std::invalid_argument("lambda_critical_2d: need delta1 > 0");
  const double a = nu - 1.0, b = q - 2.0;
  const double lam_unc = detail::critical_lambda(a, b, v0);
  // feasibility is monotone decreasing in lambda: both the minimum of h2 and
  // the left root r1 increase with lambda
  auto feasible = [&](double lam) {
    detail::RadiusProfile prof{a, b, lam};
    if (prof.min_value() > v0) return false;
    double r1, r2;
    prof.roots(v0, r1, r2);
    return r1 < delta1;
  };
  if (feasible(lam_unc * (1.0 - 1e-13))) return lam_unc;
  double lo = lam_unc;
  while (!feasible(lo)) lo *= 0.5;
  double hi = 2.0 * lo, mid = lo;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
    if ((hi - lo) <= 4e-16 * hi) break;
  }
  return mid;
}

/// Lemma-6.2-style trichotomy for h2(r) = r^(nu-1) + lambda r^(q-2) with the
/// cap r < delta1. The interval is shrunk to [r1, min(r2, delta1^-)] when the
/// cap binds; lambda_crit reports the capped critical value Lambda_1.
inline ThresholdResult admissible_radii_2d(double nu, double q, double v0, double delta1,
                                           double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("admissible_radii_2d: need lambda > 0");
  const double lam1 = lambda_critical_2d(nu, q, v0, delta1);
  detail::RadiusProfile prof{nu - 1.0, q - 2.0, lambda};
  const double lam_unc = detail::critical_lambda(prof.a, prof.b, v0);
  ThresholdResult res = detail::classify(prof, v0, lambda, lam_unc);
  res.lambda_crit = lam1;
  if (res.regime == RadiusRegime::Tangent && !(res.r_star < delta1)) {
    res.regime = RadiusRegime::Empty;
    res.delta1_binding = true;
    return res;
  }
  if (res.regime == RadiusRegime::Interval && res.r2 >= delta1) {
    res.delta1_binding = true;
    res.r2 = delta1 * (1.0 - 1e-12);
    res.defect_r2 = std::numeric_limits<double>::quiet_NaN();  // capped endpoint is not a root
    if (!(res.r1 < res.r2)) {
      res.regime = RadiusRegime::Empty;
      res.r1 = res.r2 = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return res;
}

}  // namespace ccpde
