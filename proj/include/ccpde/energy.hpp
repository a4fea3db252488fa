#pragma once

// Energy pieces of the constrained variational problem. Power case:
//   Phi(u) = (1/p) int |u|^p + (lambda/q) int |u|^q,   Psi(u) = ||u||_EV^2 / 2,
//   I(u) = Psi(u) - Phi(u).
// Truncated case (two-dimensional pipeline):
//   Upsilon(u) = int G(u) + (lambda/q) int |u|^q,      J(u) = Psi(u) - Upsilon(u).
// Nodal gradient maps are the integrands' derivatives; the concave term
// t |t|^(q-2) extends continuously by 0 at t = 0 since q > 1 (it is C^0 but
// not C^1 there, so line searches only ever use function values).

#include <cmath>

#include "ccpde/grid.hpp"
#include "ccpde/nonlinearity.hpp"
#include "ccpde/operator.hpp"

namespace ccpde {

inline double concave_term(double t, double q) {
  if (t == 0.0) return 0.0;
  const double a = std::abs(t);
  return (t < 0.0 ? -1.0 : 1.0) * std::pow(a, q - 1.0);
}

/// Nodal density and derivative of the power nonlinearity, bundled for the
/// solver. W is the primitive with W(0) = 0; dW is the right-hand side of the
/// Euler-Lagrange equation.
struct PowerNonlinearTerm {
  double p, q, lambda;

  double W(double t) const {
    const double a = std::abs(t);
    return std::pow(a, p) / p + lambda * std::pow(a, q) / q;
  }
  double dW(double t) const {
    if (t == 0.0) return 0.0;
    const double a = std::abs(t);
    const double s = (t < 0.0) ? -1.0 : 1.0;
    return s * (std::pow(a, p - 1.0) + lambda * std::pow(a, q - 1.0));
  }
  /// sup of |dW| over |t| <= r.
  double dW_bound(double r) const {
    return std::pow(r, p - 1.0) + lambda * std::pow(r, q - 1.0);
  }
};

/// Same bundle for the truncated nonlinearity g; the bound is the Lemma-style
/// estimate r^nu + lambda r^(q-1), valid for r below delta1.
struct TruncatedNonlinearTerm {
  const TruncatedNonlinearity* tn;
  double q, lambda;

  double W(double t) const {
    const double a = std::abs(t);
    return tn->G(t) + lambda * std::pow(a, q) / q;
  }
  double dW(double t) const { return tn->g(t) + lambda * concave_term(t, q); }
  double dW_bound(double r) const {
    return std::pow(r, tn->base().nu) + lambda * std::pow(r, q - 1.0);
  }
};

namespace detail {

template <class NL>
double quadrature_of_W(const Grid& grid, const NL& nl, const Field& u) {
  grid.check_field(u);
  double sum = 0.0, c = 0.0;
  for (double t : u) {
    const double y = nl.W(t) - c;
    const double s = sum + y;
    c = (s - sum) - y;
    sum = s;
  }
  return grid.cell_volume() * sum;
}

template <class NL>
Field nodal_dW(const NL& nl, const Field& u) {
  Field out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = nl.dW(u[i]);
  return out;
}

}  // namespace detail

inline double phi(const Grid& grid, const Field& u, double p, double q, double lambda) {
  return detail::quadrature_of_W(grid, PowerNonlinearTerm{p, q, lambda}, u);
}

inline Field grad_phi(const Field& u, double p, double q, double lambda) {
  return detail::nodal_dW(PowerNonlinearTerm{p, q, lambda}, u);
}

inline double grad_phi_bound(double p, double q, double lambda, double r) {
  return PowerNonlinearTerm{p, q, lambda}.dW_bound(r);
}

inline double psi(const SchrodingerOperator& op, const Field& u) {
  return 0.5 * op.ev_inner(u, u);
}

inline double energy_I(const SchrodingerOperator& op, const Field& u, double p, double q,
                       double lambda) {
  return psi(op, u) - phi(op.grid(), u, p, q, lambda);
}

inline double upsilon(const Grid& grid, const Field& u, const TruncatedNonlinearity& tn, double q,
                      double lambda) {
  return detail::quadrature_of_W(grid, TruncatedNonlinearTerm{&tn, q, lambda}, u);
}

inline Field grad_upsilon(const Field& u, const TruncatedNonlinearity& tn, double q,
                          double lambda) {
  return detail::nodal_dW(TruncatedNonlinearTerm{&tn, q, lambda}, u);
}

inline double grad_upsilon_bound(const TruncatedNonlinearity& tn, double q, double lambda,
                                 double r) {
  return TruncatedNonlinearTerm{&tn, q, lambda}.dW_bound(r);
}

inline double energy_J(const SchrodingerOperator& op, const Field& u,
                       const TruncatedNonlinearity& tn, double q, double lambda) {
  return psi(op, u) - upsilon(op.grid(), u, tn, q, lambda);
}

}  // namespace ccpde
