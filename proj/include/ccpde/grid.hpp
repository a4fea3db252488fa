#pragma once

// Uniform tensor-product discretization of the truncated box [-L,L]^N with
// homogeneous Dirichlet boundary, plus nodal quadrature and Lp norms.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccpde {

/// Nodal values of a function on the interior grid, in lexicographic node order.
using Field = std::vector<double>;

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct GridSpec {
  int dimension = 1;        // N in {1,2,3}
  double half_width = 1.0;  // L; domain is [-L,L]^N
  int nodes_per_axis = 3;   // m interior nodes per axis; spacing h = 2L/(m+1)

  void validate() const {
    if (dimension < 1 || dimension > 3)
      throw std::invalid_argument("GridSpec: dimension must be 1, 2 or 3");
    if (!(half_width > 0.0))
      throw std::invalid_argument("GridSpec: half_width must be positive");
    if (nodes_per_axis < 3)
      throw std::invalid_argument("GridSpec: nodes_per_axis must be >= 3");
  }
};

/// Interior nodes of the uniform grid, lexicographic order with the last
/// coordinate varying fastest. Node i along an axis sits at -L + (i+1)h.
class Grid {
 public:
  explicit Grid(const GridSpec& spec) : spec_(spec) {
    spec.validate();
    h_ = 2.0 * spec.half_width / (spec.nodes_per_axis + 1);
    size_ = 1;
    for (int d = 0; d < spec.dimension; ++d) size_ *= static_cast<std::size_t>(spec.nodes_per_axis);
    axis_coords_.resize(spec.nodes_per_axis);
    for (int i = 0; i < spec.nodes_per_axis; ++i)
      axis_coords_[i] = -spec.half_width + (i + 1) * h_;
  }

  const GridSpec& spec() const { return spec_; }
  int dim() const { return spec_.dimension; }
  double half_width() const { return spec_.half_width; }
  int nodes_per_axis() const { return spec_.nodes_per_axis; }
  double spacing() const { return h_; }
  std::size_t size() const { return size_; }

  /// h^N, the quadrature weight of one node.
  double cell_volume() const {
    double w = 1.0;
    for (int d = 0; d < dim(); ++d) w *= h_;
    return w;
  }

  double axis_coord(int i) const { return axis_coords_[static_cast<std::size_t>(i)]; }

  /// Decomposes a flat node index; entries beyond dim() are zero.
  std::array<int, 3> multi_index(std::size_t node) const {
    std::array<int, 3> idx{0, 0, 0};
    const auto m = static_cast<std::size_t>(spec_.nodes_per_axis);
    for (int d = dim() - 1; d >= 0; --d) {
      idx[static_cast<std::size_t>(d)] = static_cast<int>(node % m);
      node /= m;
    }
    return idx;
  }

  std::size_t flat_index(const std::array<int, 3>& idx) const {
    const auto m = static_cast<std::size_t>(spec_.nodes_per_axis);
    std::size_t node = 0;
    for (int d = 0; d < dim(); ++d) node = node * m + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
    return node;
  }

  std::array<double, 3> coords(std::size_t node) const {
    const auto idx = multi_index(node);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim(); ++d) x[static_cast<std::size_t>(d)] = axis_coords_[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
    return x;
  }

  Field make_field(double fill = 0.0) const { return Field(size_, fill); }

  void check_field(const Field& u) const {
    if (u.size() != size_)
      throw std::invalid_argument("Field length " + std::to_string(u.size()) +
                                  " does not match grid size " + std::to_string(size_));
  }

 private:
  GridSpec spec_;
  double h_ = 0.0;
  std::size_t size_ = 0;
  std::vector<double> axis_coords_;
};

inline Grid build_grid(const GridSpec& spec) { return Grid(spec); }

/// Nodal rectangle rule: h^N * sum of values. Compensated summation keeps the
/// linearity property tight on large grids.
inline double integrate(const Grid& grid, const Field& u) {
  grid.check_field(u);
  double sum = 0.0, c = 0.0;
  for (double v : u) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return grid.cell_volume() * sum;
}

/// (h^N sum |u|^beta)^(1/beta); beta = infinity gives max |u|.
inline double lp_norm(const Grid& grid, const Field& u, double beta) {
  grid.check_field(u);
  if (std::isinf(beta)) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(beta >= 1.0)) throw std::invalid_argument("lp_norm: exponent must be >= 1 or infinity");
  double sum = 0.0, c = 0.0;
  for (double v : u) {
    const double a = std::abs(v);
    const double term = (beta == 2.0) ? a * a : std::pow(a, beta);
    const double y = term - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return std::pow(grid.cell_volume() * sum, 1.0 / beta);
}

/// Quadrature L2 inner product h^N u.v.
inline double l2_inner(const Grid& grid, const Field& u, const Field& v) {
  grid.check_field(u);
  grid.check_field(v);
  double sum = 0.0, c = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double y = u[i] * v[i] - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return grid.cell_volume() * sum;
}

}  // namespace ccpde
