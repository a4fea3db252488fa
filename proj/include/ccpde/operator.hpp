#pragma once

// Sparse finite-difference discretization A of -Laplace + V(x) with the
// (2N+1)-point stencil on the interior grid. A is symmetric, diagonally
// dominant with positive diagonal and nonpositive off-diagonals (an
// M-matrix), so the discrete maximum principle V0*||v||_inf <= ||g||_inf
// holds for solutions of A v = g.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "ccpde/grid.hpp"

namespace ccpde {

struct PotentialSpec {
  enum class Kind { Constant, RadialPower, Anisotropic, Tabulated };

  Kind kind = Kind::Constant;
  double v0 = 1.0;  // certified lower bound V0 > 0
  double constant_value = 1.0;
  double base = 1.0;      // RadialPower: V(x) = base + |x|^s
  double power_s = 0.0;   // requires s > N (keeps 1/V integrable)
  double aniso_alpha = 0.0;  // V = 1 + x1^2 [sin^2(2 pi x1) + x2^2 + ...]^alpha, alpha > N
  std::vector<double> table;  // Tabulated: one value per node, lexicographic

  static PotentialSpec constant(double c) {
    PotentialSpec s;
    s.kind = Kind::Constant;
    s.constant_value = c;
    s.v0 = c;
    return s;
  }
  static PotentialSpec radial_power(double base, double s) {
    PotentialSpec p;
    p.kind = Kind::RadialPower;
    p.base = base;
    p.power_s = s;
    p.v0 = base;
    return p;
  }
  static PotentialSpec anisotropic(double alpha, double v0 = 1.0) {
    PotentialSpec p;
    p.kind = Kind::Anisotropic;
    p.aniso_alpha = alpha;
    p.v0 = v0;
    return p;
  }
  static PotentialSpec tabulated(std::vector<double> values, double v0) {
    PotentialSpec p;
    p.kind = Kind::Tabulated;
    p.table = std::move(values);
    p.v0 = v0;
    return p;
  }

  /// Checks the parametric integrability conditions against the dimension.
  void validate(int dimension) const {
    if (!(v0 > 0.0)) throw std::invalid_argument("PotentialSpec: V0 must be positive");
    switch (kind) {
      case Kind::Constant:
        if (!(constant_value >= v0))
          throw std::invalid_argument("PotentialSpec: constant value below declared V0");
        break;
      case Kind::RadialPower:
        if (!(power_s > dimension))
          throw std::invalid_argument("PotentialSpec: radial power needs s > N, got s = " +
                                      std::to_string(power_s) + " at N = " + std::to_string(dimension));
        break;
      case Kind::Anisotropic:
        if (!(aniso_alpha > dimension))
          throw std::invalid_argument("PotentialSpec: anisotropic example needs alpha > N");
        break;
      case Kind::Tabulated:
        break;  // nodal values checked at assembly
    }
  }

  double value(const std::array<double, 3>& x, int dimension) const {
    switch (kind) {
      case Kind::Constant:
        return constant_value;
      case Kind::RadialPower: {
        double r2 = 0.0;
        for (int d = 0; d < dimension; ++d) r2 += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
        return base + std::pow(std::sqrt(r2), power_s);
      }
      case Kind::Anisotropic: {
        const double x1 = x[0];
        const double s = std::sin(2.0 * std::numbers::pi * x1);
        double bracket = s * s;
        for (int d = 1; d < dimension; ++d) bracket += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
        return 1.0 + x1 * x1 * std::pow(bracket, aniso_alpha);
      }
      case Kind::Tabulated:
        throw std::logic_error("PotentialSpec: tabulated potential has no pointwise formula");
    }
    return 0.0;
  }
};

struct MaxPrincipleReport {
  double lhs = 0.0;    // V0 * ||v||_inf
  double rhs = 0.0;    // ||g||_inf
  double slack = 0.0;  // ||A v - g||_inf, the certification slack
  bool holds = false;
};

/// Assembled sparse operator, CSR storage (both triangles kept for apply).
class SchrodingerOperator {
 public:
  SchrodingerOperator(const Grid& grid, const PotentialSpec& potential)
      : grid_(grid), v0_(potential.v0) {
    potential.validate(grid.dim());
    const std::size_t n = grid.size();
    if (potential.kind == PotentialSpec::Kind::Tabulated && potential.table.size() != n)
      throw std::invalid_argument("PotentialSpec: table size does not match grid");

    const int N = grid.dim();
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const int m = grid.nodes_per_axis();

    row_ptr_.assign(n + 1, 0);
    cols_.reserve(n * static_cast<std::size_t>(2 * N + 1));
    vals_.reserve(n * static_cast<std::size_t>(2 * N + 1));
    diag_.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
      const auto idx = grid.multi_index(i);
      double vi;
      if (potential.kind == PotentialSpec::Kind::Tabulated) {
        vi = potential.table[i];
      } else {
        vi = potential.value(grid.coords(i), N);
      }
      if (!std::isfinite(vi))
        throw std::invalid_argument("potential is not finite at node " + std::to_string(i));
      if (vi < v0_)
        throw std::invalid_argument("potential below declared V0 at node " + std::to_string(i) +
                                    " (V = " + std::to_string(vi) + ", V0 = " + std::to_string(v0_) + ")");

      // row entries in ascending column order: lower neighbors, diagonal, upper
      for (int d = 0; d < N; ++d) {
        if (idx[static_cast<std::size_t>(d)] > 0) {
          auto nb = idx;
          nb[static_cast<std::size_t>(d)] -= 1;
          cols_.push_back(grid.flat_index(nb));
          vals_.push_back(-inv_h2);
        }
      }
      cols_.push_back(i);
      vals_.push_back(2.0 * N * inv_h2 + vi);
      diag_[i] = vals_.back();
      for (int d = N - 1; d >= 0; --d) {
        if (idx[static_cast<std::size_t>(d)] < m - 1) {
          auto nb = idx;
          nb[static_cast<std::size_t>(d)] += 1;
          cols_.push_back(grid.flat_index(nb));
          vals_.push_back(-inv_h2);
        }
      }
      row_ptr_[i + 1] = cols_.size();
    }
  }

  const Grid& grid() const { return grid_; }
  double v0() const { return v0_; }
  std::size_t size() const { return grid_.size(); }
  double diag(std::size_t i) const { return diag_[i]; }

  void apply(const Field& u, Field& out) const {
    grid_.check_field(u);
    out.resize(u.size());
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += vals_[k] * u[cols_[k]];
      out[i] = s;
    }
  }

  Field apply(const Field& u) const {
    Field out;
    apply(u, out);
    return out;
  }

  /// E_V inner product h^N u^T A v; the stencil's Dirichlet form telescopes
  /// the gradient quadrature, so this equals sum |grad_h u|^2 h^N + sum V u v h^N.
  double ev_inner(const Field& u, const Field& v) const {
    Field av = apply(v);
    return l2_inner(grid_, u, av);
  }

  double ev_norm(const Field& u) const { return std::sqrt(std::max(0.0, ev_inner(u, u))); }

  /// Jacobi-preconditioned conjugate gradients; deterministic given inputs.
  /// Returns v with ||A v - g||_2 <= rel_tol * ||g||_2.
  Field solve_linear(const Field& g, double rel_tol = 1e-10, std::size_t max_iter = 0) const {
    grid_.check_field(g);
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
      throw std::invalid_argument("solve_linear: rel_tol must lie in (0,1)");
    const std::size_t n = g.size();
    if (max_iter == 0) max_iter = 40 * n + 200;

    double gnorm2 = 0.0;
    for (double x : g) gnorm2 += x * x;
    Field v(n, 0.0);
    if (gnorm2 == 0.0) return v;
    const double target = rel_tol * rel_tol * gnorm2;

    Field r = g;              // residual g - A v with v = 0
    Field z(n), p(n), ap(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag_[i];
    p = z;
    double rz = dot(r, z);
    double rr = gnorm2;
    for (std::size_t it = 0; it < max_iter; ++it) {
      apply(p, ap);
      const double pap = dot(p, ap);
      const double alpha = rz / pap;
      for (std::size_t i = 0; i < n; ++i) v[i] += alpha * p[i];
      for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
      rr = dot(r, r);
      if (rr <= target) return v;
      for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag_[i];
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    std::ostringstream msg;
    msg << "solve_linear: CG iteration cap exceeded, achieved rel residual "
        << std::sqrt(rr / gnorm2) << ", condition estimate <= " << condition_estimate();
    throw std::runtime_error(msg.str());
  }

  /// Gershgorin upper bound over V0: crude kappa(A) estimate for diagnostics.
  double condition_estimate() const {
    double row_max = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      double s = 0.0;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += std::abs(vals_[k]);
      row_max = std::max(row_max, s);
    }
    return row_max / v0_;
  }

  /// Coordinate-list export "row col value", 0-based, for debugging.
  void write_coo(std::ostream& os) const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        os << i << ' ' << cols_[k] << ' ' << vals_[k] << '\n';
  }

  // raw CSR access (tests, validate suite)
  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& cols() const { return cols_; }
  const std::vector<double>& vals() const { return vals_; }

 private:
  static double dot(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  Grid grid_;
  double v0_;
  std::vector<std::size_t> row_ptr_, cols_;
  std::vector<double> vals_;
  std::vector<double> diag_;
};

inline SchrodingerOperator assemble(const Grid& grid, const PotentialSpec& potential) {
  return SchrodingerOperator(grid, potential);
}

/// Discrete analogue of the L-infinity estimate for A v = g: checks
/// V0*||v||_inf <= ||g||_inf + slack with slack the measured residual sup norm.
inline MaxPrincipleReport max_principle_bound(const SchrodingerOperator& op, const Field& g,
                                              const Field& v) {
  MaxPrincipleReport rep;
  const Grid& grid = op.grid();
  rep.lhs = op.v0() * lp_norm(grid, v, infinity);
  rep.rhs = lp_norm(grid, g, infinity);
  Field av = op.apply(v);
  for (std::size_t i = 0; i < av.size(); ++i) av[i] -= g[i];
  rep.slack = lp_norm(grid, av, infinity);
  const double rounding = 1e-12 * (rep.rhs + rep.slack + 1.0);
  rep.holds = rep.lhs <= rep.rhs + rep.slack + rounding;
  return rep;
}

}  // namespace ccpde
