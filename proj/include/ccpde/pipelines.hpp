#pragma once

// End-to-end drivers: the power-nonlinearity pipeline (admissible radii,
// seeded descent over the positive cone, two-sided certification) and the
// two-dimensional truncated pipeline (delta1 detection, Lambda_1 radii,
// minimization of the truncated energy, and the final check that the
// solution also solves the untruncated problem). Plus the lambda sweep.

#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ccpde/energy.hpp"
#include "ccpde/nonlinearity.hpp"
#include "ccpde/operator.hpp"
#include "ccpde/solver.hpp"
#include "ccpde/spectrum.hpp"
#include "ccpde/thresholds.hpp"

namespace ccpde {

struct EmptyAdmissibleInterval : std::runtime_error {
  explicit EmptyAdmissibleInterval(const std::string& what, bool binding = false)
      : std::runtime_error(what), delta1_binding(binding) {}
  bool delta1_binding = false;
};

struct PowerPipelineResult {
  ThresholdResult radii;
  SolveReport report;
  double box_radius = 0.0;          // r used for the box constraint
  double pde_residual_inf = 0.0;
  bool certificate_available = false;  // false when lambda >= Lambda_0
};

/// Solves the power-case problem over K = [0, r2] (or the symmetric box) from
/// the deterministic negative-energy seed along the ground eigenfield. When
/// lambda >= Lambda_0 there is no admissible radius; the solve still runs on
/// a nominal box but no invariance certificate is claimed.
inline PowerPipelineResult solve_power(const SchrodingerOperator& op, double p, double q,
                                       double lambda, const SolveOptions& opts,
                                       const Field* seed_direction = nullptr,
                                       bool positive_cone = true) {
  PowerPipelineResult out;
  PowerParams params{p, q, lambda, op.v0()};
  out.radii = admissible_radii(params);
  switch (out.radii.regime) {
    case RadiusRegime::Interval:
      out.box_radius = out.radii.r2;
      out.certificate_available = true;
      break;
    case RadiusRegime::Tangent:
      out.box_radius = out.radii.r_star;
      out.certificate_available = true;
      break;
    case RadiusRegime::Empty:
      out.box_radius = std::pow(op.v0(), 1.0 / (p - 2.0));  // lambda -> 0 radius, nominal
      out.certificate_available = false;
      break;
  }
  const ConvexSet K{positive_cone ? 0.0 : -out.box_radius, out.box_radius};
  const PowerNonlinearTerm nl{p, q, lambda};

  Field direction;
  if (seed_direction) {
    direction = *seed_direction;
  } else {
    direction = eigenpairs(op, 1).fields[0];
  }
  const Field seed = negative_energy_seed(op, nl, K, direction);

  out.report = minimize_IK(op, nl, K, opts, seed);
  out.report.stationarity_margin =
      stationarity_check(op, nl, K, out.report.u, opts.stationarity_probes, opts.seed);
  if (out.certificate_available)
    out.report.invariance =
        certify_invariance(op, nl, out.report.u, out.box_radius, opts.lin_tol, opts.cert_tol);
  out.pde_residual_inf = pde_residual(op, nl, out.report.u);
  return out;
}

struct TruncatedPipelineResult {
  double delta1 = 0.0;
  double lambda1 = 0.0;  // capped critical value Lambda_1
  ThresholdResult radii;
  SolveReport report;
  double box_radius = 0.0;
  double truncated_residual_inf = 0.0;    // residual of the truncated equation
  double untruncated_residual_inf = 0.0;  // residual of the original equation
  bool solves_untruncated = false;        // sup|u| <= r2 < delta1, so g(u) = f(u)
};

/// Two-dimensional driver: builds the truncation at the largest admissible
/// radius r2 < delta1, minimizes J over [0, r2], certifies invariance with
/// the truncated bound, and verifies the solution against the original
/// untruncated equation.
inline TruncatedPipelineResult solve_truncated(const SchrodingerOperator& op,
                                               const NonlinearitySpec& f, double q, double lambda,
                                               const SolveOptions& opts,
                                               const Field* seed_direction = nullptr) {
  if (op.grid().dim() != 2)
    throw std::invalid_argument("solve_truncated: the truncated pipeline is the N = 2 case");
  TruncatedPipelineResult out;
  out.delta1 = detect_delta1(f);
  out.radii = admissible_radii_2d(f.nu, q, op.v0(), out.delta1, lambda);
  out.lambda1 = out.radii.lambda_crit;
  if (out.radii.regime == RadiusRegime::Empty)
    throw EmptyAdmissibleInterval(
        out.radii.delta1_binding
            ? "solve_truncated: admissible interval emptied by the delta1 cap"
            : "solve_truncated: empty admissible interval (lambda > Lambda_1)",
        out.radii.delta1_binding);
  out.box_radius = (out.radii.regime == RadiusRegime::Interval) ? out.radii.r2 : out.radii.r_star;

  TruncatedNonlinearity tn(f, out.box_radius);
  const TruncatedNonlinearTerm nl{&tn, q, lambda};
  const ConvexSet K{0.0, out.box_radius};

  Field direction;
  if (seed_direction) {
    direction = *seed_direction;
  } else {
    direction = eigenpairs(op, 1).fields[0];
  }
  const Field seed = negative_energy_seed(op, nl, K, direction);

  out.report = minimize_IK(op, nl, K, opts, seed);
  out.report.stationarity_margin =
      stationarity_check(op, nl, K, out.report.u, opts.stationarity_probes, opts.seed);
  out.report.invariance =
      certify_invariance(op, nl, out.report.u, out.box_radius, opts.lin_tol, opts.cert_tol);
  out.truncated_residual_inf = pde_residual(op, nl, out.report.u);

  // below the truncation level g(u) = f(u) nodally, so the same field solves
  // the original problem; evaluate that residual independently
  const double sup_u = lp_norm(op.grid(), out.report.u, infinity);
  out.solves_untruncated = sup_u <= out.box_radius && out.box_radius < out.delta1;
  Field res = op.apply(out.report.u);
  for (std::size_t i = 0; i < res.size(); ++i)
    res[i] -= f.f(out.report.u[i]) + lambda * concave_term(out.report.u[i], q);
  out.untruncated_residual_inf = lp_norm(op.grid(), res, infinity);
  return out;
}

struct SweepRow {
  double lambda = 0.0;
  double energy = 0.0;
  double sup_norm = 0.0;
  bool certified = false;
};

/// Runs solve_power over the lambda grid Lambda_0 * i / count, i = 1..count.
/// Rows are ordered by lambda regardless of worker scheduling; every solve is
/// independent and deterministic, so the output is reproducible.
inline std::vector<SweepRow> sweep_lambda(const SchrodingerOperator& op, double p, double q,
                                          int count, const SolveOptions& opts, int workers = 1) {
  if (count < 1) throw std::invalid_argument("sweep_lambda: need count >= 1");
  const double lambda0 = lambda_critical(p, q, op.v0());
  const Field e1 = eigenpairs(op, 1).fields[0];
  std::vector<SweepRow> rows(static_cast<std::size_t>(count));

  auto run_index = [&](int i) {
    const double lambda = lambda0 * (i + 1) / count;
    const auto res = solve_power(op, p, q, lambda, opts, &e1);
    SweepRow row;
    row.lambda = lambda;
    row.energy = res.report.energy;
    row.sup_norm = lp_norm(op.grid(), res.report.u, infinity);
    row.certified = res.certificate_available && res.report.converged &&
                    res.report.invariance.certified;
    rows[static_cast<std::size_t>(i)] = row;
  };

  workers = std::max(1, workers);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) run_index(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w]() {
        for (int i = w; i < count; i += workers) run_index(i);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace ccpde
