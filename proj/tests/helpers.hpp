#pragma once

// Test-only oracles, independent of the library's solution paths: dense
// Gaussian elimination, a dense inverse, multi-start Nelder-Mead box search,
// and small random-field utilities.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "ccpde/grid.hpp"
#include "ccpde/operator.hpp"

namespace testing {

using ccpde::Field;

inline std::vector<std::vector<double>> dense_matrix(const ccpde::SchrodingerOperator& op) {
  const std::size_t n = op.size();
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  const auto& rp = op.row_ptr();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) A[i][op.cols()[k]] = op.vals()[k];
  return A;
}

/// Partial-pivot Gaussian elimination; the reference linear solver.
inline Field dense_solve(std::vector<std::vector<double>> A, Field b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    if (A[col][col] == 0.0) throw std::runtime_error("dense_solve: singular matrix");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  Field x(n, 0.0);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= A[ri][c] * x[c];
    x[ri] = s / A[ri][ri];
  }
  return x;
}

inline std::vector<std::vector<double>> dense_inverse(const std::vector<std::vector<double>>& A) {
  const std::size_t n = A.size();
  std::vector<std::vector<double>> inv(n);
  for (std::size_t j = 0; j < n; ++j) {
    Field e(n, 0.0);
    e[j] = 1.0;
    const Field col = dense_solve(A, e);
    for (std::size_t i = 0; i < n; ++i) {
      if (inv[i].empty()) inv[i].assign(n, 0.0);
      inv[i][j] = col[i];
    }
  }
  return inv;
}

/// Nelder-Mead over a box, nodal clamping, deterministic restarts. The
/// brute-force oracle for tiny constrained minimizations.
inline Field nelder_mead_box(const std::function<double(const Field&)>& f, std::size_t n,
                             double lo, double hi, int restarts, std::uint64_t seed,
                             int iters_per_start = 6000) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(lo, hi);
  auto clamp_point = [&](Field& x) {
    for (double& t : x) t = std::clamp(t, lo, hi);
  };

  Field best;
  double best_val = std::numeric_limits<double>::infinity();
  for (int start = 0; start < restarts; ++start) {
    std::vector<Field> simplex(n + 1, Field(n));
    for (auto& vtx : simplex)
      for (double& t : vtx) t = box(rng);
    std::vector<double> val(n + 1);
    for (std::size_t i = 0; i <= n; ++i) val[i] = f(simplex[i]);

    for (int it = 0; it < iters_per_start; ++it) {
      std::vector<std::size_t> ord(n + 1);
      for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
      std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
      const std::size_t worst = ord[n], second = ord[n - 1], top = ord[0];

      Field centroid(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / double(n);
      }
      auto affine = [&](double t) {
        Field x(n);
        for (std::size_t d = 0; d < n; ++d)
          x[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
        clamp_point(x);
        return x;
      };

      Field refl = affine(-1.0);
      const double fr = f(refl);
      if (fr < val[top]) {
        Field expa = affine(-2.0);
        const double fe = f(expa);
        if (fe < fr) {
          simplex[worst] = expa;
          val[worst] = fe;
        } else {
          simplex[worst] = refl;
          val[worst] = fr;
        }
      } else if (fr < val[second]) {
        simplex[worst] = refl;
        val[worst] = fr;
      } else {
        Field contr = affine(0.5);
        const double fc = f(contr);
        if (fc < val[worst]) {
          simplex[worst] = contr;
          val[worst] = fc;
        } else {
          for (std::size_t i = 0; i <= n; ++i) {
            if (i == top) continue;
            for (std::size_t d = 0; d < n; ++d)
              simplex[i][d] = simplex[top][d] + 0.5 * (simplex[i][d] - simplex[top][d]);
            val[i] = f(simplex[i]);
          }
        }
      }
      double spread = 0.0;
      for (std::size_t i = 0; i <= n; ++i) spread = std::max(spread, std::abs(val[i] - val[top]));
      if (spread < 1e-15) break;
    }
    for (std::size_t i = 0; i <= n; ++i)
      if (val[i] < best_val) {
        best_val = val[i];
        best = simplex[i];
      }
  }
  return best;
}

inline Field random_field(const ccpde::Grid& grid, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Field u = grid.make_field();
  for (double& t : u) t = dist(rng);
  return u;
}

}  // namespace testing
