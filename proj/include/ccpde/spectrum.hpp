#pragma once

// Low eigenpairs of the discrete Schrodinger operator by inverse subspace
// iteration with Rayleigh-Ritz projection, the negative-level witness on
// eigenfunction spheres, and the search for multiple distinct certified
// solutions over the symmetric box.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ccpde/operator.hpp"
#include "ccpde/solver.hpp"

namespace ccpde {

/// Smallest eigenpairs, E_V-orthonormal: h^N e_i^T A e_j = delta_ij and
/// A e_j = mu_j e_j within the residual tolerance. mu_1 >= V0 always.
struct EigenPairs {
  std::vector<double> values;
  std::vector<Field> fields;
};

namespace detail {

// cyclic Jacobi on a small symmetric matrix, row-major; returns eigenvalues
// ascending and the rotation Q (columns are eigenvectors) with H = Q L Q^T
inline void jacobi_eigen(std::vector<double> H, int b, std::vector<double>& evals,
                         std::vector<double>& Q) {
  Q.assign(static_cast<std::size_t>(b) * b, 0.0);
  for (int i = 0; i < b; ++i) Q[static_cast<std::size_t>(i) * b + i] = 1.0;
  auto at = [&](std::vector<double>& M, int r, int c) -> double& {
    return M[static_cast<std::size_t>(r) * b + c];
  };
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int r = 0; r < b; ++r)
      for (int c = r + 1; c < b; ++c) off += at(H, r, c) * at(H, r, c);
    if (off < 1e-30) break;
    for (int r = 0; r < b; ++r) {
      for (int c = r + 1; c < b; ++c) {
        const double hrc = at(H, r, c);
        if (std::abs(hrc) < 1e-300) continue;
        const double theta = 0.5 * (at(H, c, c) - at(H, r, r)) / hrc;
        const double t = ((theta >= 0.0) ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (int i = 0; i < b; ++i) {
          const double hir = at(H, i, r), hic = at(H, i, c);
          at(H, i, r) = cs * hir - sn * hic;
          at(H, i, c) = sn * hir + cs * hic;
        }
        for (int i = 0; i < b; ++i) {
          const double hri = at(H, r, i), hci = at(H, c, i);
          at(H, r, i) = cs * hri - sn * hci;
          at(H, c, i) = sn * hri + cs * hci;
        }
        for (int i = 0; i < b; ++i) {
          const double qir = at(Q, i, r), qic = at(Q, i, c);
          at(Q, i, r) = cs * qir - sn * qic;
          at(Q, i, c) = sn * qir + cs * qic;
        }
      }
    }
  }
  // sort ascending, permuting Q columns
  std::vector<int> perm(static_cast<std::size_t>(b));
  for (int i = 0; i < b; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    return H[static_cast<std::size_t>(x) * b + x] < H[static_cast<std::size_t>(y) * b + y];
  });
  evals.resize(static_cast<std::size_t>(b));
  std::vector<double> Qs(Q.size());
  for (int j = 0; j < b; ++j) {
    evals[static_cast<std::size_t>(j)] = H[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]) * b + perm[static_cast<std::size_t>(j)]];
    for (int i = 0; i < b; ++i)
      Qs[static_cast<std::size_t>(i) * b + j] = Q[static_cast<std::size_t>(i) * b + perm[static_cast<std::size_t>(j)]];
  }
  Q = std::move(Qs);
}

inline void orthonormalize(std::vector<Field>& X) {
  for (std::size_t j = 0; j < X.size(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {  // twice-is-enough modified Gram-Schmidt
      for (std::size_t i = 0; i < j; ++i) {
        double d = 0.0;
        for (std::size_t t = 0; t < X[j].size(); ++t) d += X[i][t] * X[j][t];
        for (std::size_t t = 0; t < X[j].size(); ++t) X[j][t] -= d * X[i][t];
      }
    }
    double nrm = 0.0;
    for (double t : X[j]) nrm += t * t;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-200) throw std::runtime_error("eigenpairs: subspace collapsed");
    for (double& t : X[j]) t /= nrm;
  }
}

}  // namespace detail

/// Inverse subspace iteration on A with Rayleigh-Ritz extraction. Each outer
/// step applies A^{-1} columnwise through the preconditioned CG solver, so the
/// whole computation is deterministic for a fixed seed.
inline EigenPairs eigenpairs(const SchrodingerOperator& op, int k, double tol = 1e-9,
                             std::uint64_t seed = 777u, std::size_t max_outer = 600) {
  const std::size_t n = op.size();
  if (k < 1) throw std::invalid_argument("eigenpairs: need k >= 1");
  if (static_cast<std::size_t>(k) + 1 > n)
    throw std::invalid_argument("eigenpairs: k too large for this grid");
  const int b = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(k) + 3));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Field> X(static_cast<std::size_t>(b), Field(n));
  for (auto& col : X)
    for (double& t : col) t = gauss(rng);
  detail::orthonormalize(X);

  std::vector<double> theta;
  std::vector<Field> AX(static_cast<std::size_t>(b), Field(n));
  bool converged = false;
  for (std::size_t outer = 0; outer < max_outer && !converged; ++outer) {
    std::vector<Field> Y(static_cast<std::size_t>(b));
    for (int j = 0; j < b; ++j) Y[static_cast<std::size_t>(j)] = op.solve_linear(X[static_cast<std::size_t>(j)], 1e-12);
    detail::orthonormalize(Y);
    for (int j = 0; j < b; ++j) op.apply(Y[static_cast<std::size_t>(j)], AX[static_cast<std::size_t>(j)]);
    std::vector<double> H(static_cast<std::size_t>(b) * b);
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) {
        double d = 0.0;
        for (std::size_t t = 0; t < n; ++t) d += Y[static_cast<std::size_t>(i)][t] * AX[static_cast<std::size_t>(j)][t];
        H[static_cast<std::size_t>(i) * b + j] = d;
      }
    // symmetrize rounding
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j) {
        const double s = 0.5 * (H[static_cast<std::size_t>(i) * b + j] + H[static_cast<std::size_t>(j) * b + i]);
        H[static_cast<std::size_t>(i) * b + j] = H[static_cast<std::size_t>(j) * b + i] = s;
      }
    std::vector<double> Q;
    detail::jacobi_eigen(H, b, theta, Q);
    std::vector<Field> Xn(static_cast<std::size_t>(b), Field(n, 0.0));
    std::vector<Field> AXn(static_cast<std::size_t>(b), Field(n, 0.0));
    for (int j = 0; j < b; ++j)
      for (int i = 0; i < b; ++i) {
        const double qij = Q[static_cast<std::size_t>(i) * b + j];
        if (qij == 0.0) continue;
        for (std::size_t t = 0; t < n; ++t) {
          Xn[static_cast<std::size_t>(j)][t] += qij * Y[static_cast<std::size_t>(i)][t];
          AXn[static_cast<std::size_t>(j)][t] += qij * AX[static_cast<std::size_t>(i)][t];
        }
      }
    X = std::move(Xn);
    AX = std::move(AXn);
    converged = true;
    for (int j = 0; j < k; ++j) {
      double res = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double r = AX[static_cast<std::size_t>(j)][t] - theta[static_cast<std::size_t>(j)] * X[static_cast<std::size_t>(j)][t];
        res += r * r;
      }
      if (std::sqrt(res) > tol * theta[static_cast<std::size_t>(j)]) {
        converged = false;
        break;
      }
    }
  }
  if (!converged) throw std::runtime_error("eigenpairs: subspace iteration did not converge");

  EigenPairs out;
  const double hn = op.grid().cell_volume();
  for (int j = 0; j < k; ++j) {
    Field e = X[static_cast<std::size_t>(j)];
    // deterministic sign: largest-magnitude entry positive
    std::size_t imax = 0;
    for (std::size_t t = 1; t < n; ++t)
      if (std::abs(e[t]) > std::abs(e[imax])) imax = t;
    const double sgn = (e[imax] < 0.0) ? -1.0 : 1.0;
    // Euclidean-orthonormal -> E_V-orthonormal: h^N e^T A e = 1
    const double scale = sgn / std::sqrt(hn * theta[static_cast<std::size_t>(j)]);
    for (double& t : e) t *= scale;
    out.values.push_back(theta[static_cast<std::size_t>(j)]);
    out.fields.push_back(std::move(e));
  }
  return out;
}

/// Seed t * project(direction, K) with the largest dyadic t in (0,1] whose
/// energy is negative; exists for every nonzero direction because the concave
/// term dominates at small amplitude.
template <class NL>
Field negative_energy_seed(const SchrodingerOperator& op, const NL& nl, const ConvexSet& K,
                           const Field& direction) {
  Field e = project(direction, K);
  double norm_e = lp_norm(op.grid(), e, infinity);
  if (norm_e == 0.0) throw std::invalid_argument("negative_energy_seed: direction clips to zero");
  Field u(e.size());
  double t = 1.0;
  for (int j = 0; j < 400; ++j) {
    for (std::size_t i = 0; i < e.size(); ++i) u[i] = t * e[i];
    if (constrained_energy(op, nl, u) < 0.0) return u;
    t *= 0.5;
  }
  throw std::runtime_error("negative_energy_seed: no negative-energy amplitude found");
}

struct CkReport {
  int k = 0;
  double rho = std::numeric_limits<double>::quiet_NaN();
  double sphere_sup = std::numeric_limits<double>::quiet_NaN();
  bool negative = false;
  bool rho_admissible = false;      // some candidate rho satisfied the K-membership bound
  double sup_over_ev_ratio = 0.0;   // measured sup-norm / E_V-norm constant on the span
  std::size_t n_points = 0;
};

namespace detail {

// deterministic nested direction sets: dirs(k) contains dirs(k-1) embedded,
// the 2k axis points, and `samples` fresh unit vectors
inline std::vector<std::vector<double>> sphere_directions(int k, int samples,
                                                          std::uint64_t seed) {
  std::vector<std::vector<double>> dirs;
  for (int kk = 1; kk <= k; ++kk) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> axis(static_cast<std::size_t>(k), 0.0);
      axis[static_cast<std::size_t>(kk - 1)] = s;
      dirs.push_back(std::move(axis));
    }
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(kk) * 1000003u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
      std::vector<double> d(static_cast<std::size_t>(k), 0.0);
      double nrm = 0.0;
      for (int i = 0; i < kk; ++i) {
        d[static_cast<std::size_t>(i)] = gauss(rng);
        nrm += d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
      }
      nrm = std::sqrt(nrm);
      if (nrm < 1e-12) continue;
      for (int i = 0; i < kk; ++i) d[static_cast<std::size_t>(i)] /= nrm;
      dirs.push_back(std::move(d));
    }
  }
  return dirs;
}

}  // namespace detail

/// Energy sup over the sampled sphere {sum alpha_i e_i : sum alpha_i^2 = rho^2}
/// together with the measured sup/E_V norm ratio of the sampled span elements.
template <class NL>
std::pair<double, double> sphere_sup_at(const SchrodingerOperator& op, const NL& nl,
                                        const EigenPairs& pairs, int k, double rho, int samples,
                                        std::uint64_t seed) {
  if (static_cast<std::size_t>(k) > pairs.fields.size())
    throw std::invalid_argument("sphere_sup_at: not enough eigenpairs");
  const auto dirs = detail::sphere_directions(k, samples, seed);
  const std::size_t n = op.size();
  double sup = -std::numeric_limits<double>::infinity();
  double ratio = 0.0;
  Field u(n);
  for (const auto& d : dirs) {
    std::fill(u.begin(), u.end(), 0.0);
    for (int i = 0; i < k; ++i) {
      const double a = rho * d[static_cast<std::size_t>(i)];
      if (a == 0.0) continue;
      const Field& e = pairs.fields[static_cast<std::size_t>(i)];
      for (std::size_t t = 0; t < n; ++t) u[t] += a * e[t];
    }
    ratio = std::max(ratio, lp_norm(op.grid(), u, infinity) / rho);
    sup = std::max(sup, constrained_energy(op, nl, u));
  }
  return {sup, ratio};
}

/// Scans rho_grid for the most negative sampled sphere sup subject to the
/// K-membership bound C * rho <= r_box. Upper-bounds the minimax level c_k.
template <class NL>
CkReport verify_ck_negative(const SchrodingerOperator& op, const NL& nl, const EigenPairs& pairs,
                            int k, const std::vector<double>& rho_grid, int samples, double r_box,
                            std::uint64_t seed = 424242u) {
  CkReport rep;
  rep.k = k;
  rep.n_points = detail::sphere_directions(k, samples, seed).size();
  double best_sup = std::numeric_limits<double>::infinity();
  for (double rho : rho_grid) {
    const auto [sup, ratio] = sphere_sup_at(op, nl, pairs, k, rho, samples, seed);
    if (ratio * rho > r_box) continue;  // sphere leaves the box; skip, never guess
    rep.rho_admissible = true;
    if (sup < best_sup) {
      best_sup = sup;
      rep.rho = rho;
      rep.sphere_sup = sup;
      rep.sup_over_ev_ratio = ratio;
    }
  }
  rep.negative = rep.rho_admissible && rep.sphere_sup < 0.0;
  return rep;
}

struct MultiSolveOptions {
  int seed_directions = 4;
  SolveOptions solve;
  double deflation_radius = 0.25;
  double pde_tol = 1e-6;          // certification scale; distinctness radius is 1e3 times this
  bool deflated_pass = true;
  double margin_tol_factor = 1e-8;
};

/// Certified distinct solutions over the symmetric box [-r2, r2]: seeds along
/// +-e_1..e_k, an optional deflated re-minimization pass, and odd-pair
/// completion. Results are merged in deterministic (energy, lexicographic)
/// order and filtered by the sup-norm distinctness radius. Certificates are
/// always evaluated on the plain energy.
template <class NL>
std::vector<SolveReport> multi_solve(const SchrodingerOperator& op, const NL& nl,
                                     const ConvexSet& Ksym, const EigenPairs& pairs,
                                     const MultiSolveOptions& opts) {
  if (Ksym.lower != -Ksym.upper)
    throw std::invalid_argument("multi_solve: expected a symmetric box");
  const double r2 = Ksym.upper;
  const int k = std::min<int>(opts.seed_directions, static_cast<int>(pairs.fields.size()));

  std::vector<SolveReport> candidates;
  auto certify = [&](SolveReport rep) {
    if (!rep.converged || !(rep.energy < 0.0)) return;
    rep.stationarity_margin = stationarity_check(op, nl, Ksym, rep.u,
                                                 opts.solve.stationarity_probes, opts.solve.seed);
    rep.invariance = certify_invariance(op, nl, rep.u, r2, opts.solve.lin_tol,
                                        opts.solve.cert_tol);
    const double margin_tol =
        opts.margin_tol_factor * std::max(1.0, op.ev_norm(rep.u) * op.ev_norm(rep.u));
    if (rep.stationarity_margin < -margin_tol || !rep.invariance.certified) return;
    candidates.push_back(std::move(rep));
    // odd-pair completion: the equation is odd, so -u is re-verified and kept
    SolveReport mirror = candidates.back();
    for (double& t : mirror.u) t = -t;
    mirror.energy = constrained_energy(op, nl, mirror.u);
    mirror.stationarity_margin = stationarity_check(op, nl, Ksym, mirror.u,
                                                    opts.solve.stationarity_probes, opts.solve.seed);
    mirror.invariance = certify_invariance(op, nl, mirror.u, r2, opts.solve.lin_tol,
                                           opts.solve.cert_tol);
    mirror.trace.clear();
    if (mirror.stationarity_margin >= -margin_tol && mirror.invariance.certified &&
        mirror.energy < 0.0)
      candidates.push_back(std::move(mirror));
  };

  for (int j = 0; j < k; ++j) {
    for (double sgn : {1.0, -1.0}) {
      Field dir(op.size());
      for (std::size_t t = 0; t < dir.size(); ++t)
        dir[t] = sgn * pairs.fields[static_cast<std::size_t>(j)][t];
      Field seed = negative_energy_seed(op, nl, Ksym, dir);
      certify(minimize_IK(op, nl, Ksym, opts.solve, seed));
    }
  }

  if (opts.deflated_pass && !candidates.empty()) {
    Deflation defl;
    defl.radius = opts.deflation_radius;
    for (const auto& c : candidates) defl.centers.push_back(c.u);
    for (int j = 0; j < k; ++j) {
      Field dir = pairs.fields[static_cast<std::size_t>(j)];
      Field seed = negative_energy_seed(op, nl, Ksym, dir);
      certify(minimize_IK(op, nl, Ksym, opts.solve, seed, &defl));
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const SolveReport& a, const SolveReport& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return std::lexicographical_compare(a.u.begin(), a.u.end(), b.u.begin(), b.u.end());
  });
  const double dist_tol = 1e3 * opts.pde_tol;
  std::vector<SolveReport> out;
  for (auto& c : candidates) {
    bool dup = false;
    for (const auto& kept : out) {
      double d = 0.0;
      for (std::size_t t = 0; t < c.u.size(); ++t)
        d = std::max(d, std::abs(c.u[t] - kept.u[t]));
      if (d <= dist_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ccpde
