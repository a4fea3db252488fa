#pragma once

// Odd superlinear nonlinearities f and the truncation g used by the
// two-dimensional pipeline: g(t) = f(t) for |t| <= r and (f(r)/r) t beyond,
// together with the primitive G(t) = int_0^t g and the detection of the
// largest delta with |f(t)| <= |t|^nu on [0, delta].

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ccpde {

struct NonlinearitySpec {
  enum class Kind { Power, OddExp, TabulatedOdd };

  Kind kind = Kind::Power;
  double p = 4.0;    // Power: f(t) = |t|^(p-2) t
  int alpha = 1;     // OddExp: f(t) = t^(2 alpha + 1) exp(beta t^2)
  double beta = 0.0;
  double nu = std::numeric_limits<double>::quiet_NaN();  // small-t exponent, > 1
  std::vector<std::pair<double, double>> samples;  // TabulatedOdd: (t >= 0, f(t)), t increasing

  static NonlinearitySpec power(double p, double nu = std::numeric_limits<double>::quiet_NaN()) {
    NonlinearitySpec s;
    s.kind = Kind::Power;
    s.p = p;
    s.nu = nu;
    if (!(p > 2.0)) throw std::invalid_argument("NonlinearitySpec: power needs p > 2");
    if (!std::isnan(nu) && !(nu > 1.0 && nu < p - 1.0))
      throw std::invalid_argument("NonlinearitySpec: power needs 1 < nu < p - 1");
    return s;
  }

  static NonlinearitySpec odd_exp(int alpha, double beta, double nu) {
    NonlinearitySpec s;
    s.kind = Kind::OddExp;
    s.alpha = alpha;
    s.beta = beta;
    s.nu = nu;
    if (alpha < 1) throw std::invalid_argument("NonlinearitySpec: odd_exp needs alpha >= 1");
    if (!(nu > 1.0)) throw std::invalid_argument("NonlinearitySpec: need nu > 1");
    if (!(2 * alpha + 1 > nu))
      throw std::invalid_argument("NonlinearitySpec: odd_exp needs 2 alpha + 1 > nu");
    return s;
  }

  static NonlinearitySpec tabulated_odd(std::vector<std::pair<double, double>> pts, double nu) {
    NonlinearitySpec s;
    s.kind = Kind::TabulatedOdd;
    s.samples = std::move(pts);
    s.nu = nu;
    if (!(nu > 1.0)) throw std::invalid_argument("NonlinearitySpec: need nu > 1");
    if (s.samples.size() < 2)
      throw std::invalid_argument("NonlinearitySpec: tabulated_odd needs at least 2 samples");
    double prev_t = -1.0;
    for (const auto& [t, ft] : s.samples) {
      if (!(t >= 0.0) || t <= prev_t)
        throw std::invalid_argument("NonlinearitySpec: sample abscissae must be increasing and >= 0");
      if (ft < 0.0) throw std::invalid_argument("NonlinearitySpec: need f(t) >= 0 for t >= 0");
      prev_t = t;
    }
    if (s.samples.front().first != 0.0 || s.samples.front().second != 0.0)
      throw std::invalid_argument("NonlinearitySpec: first sample must be (0, 0)");
    return s;
  }

  /// f is odd: f(-t) = -f(t).
  double f(double t) const {
    const double a = std::abs(t);
    const double s = (t < 0.0) ? -1.0 : 1.0;
    switch (kind) {
      case Kind::Power:
        return s * std::pow(a, p - 1.0);
      case Kind::OddExp:
        return s * std::pow(a, 2.0 * alpha + 1.0) * std::exp(beta * a * a);
      case Kind::TabulatedOdd: {
        // linear interpolation, linear extrapolation by the last segment slope
        if (a >= samples.back().first) {
          const auto& [t1, f1] = samples[samples.size() - 2];
          const auto& [t2, f2] = samples.back();
          return s * (f2 + (f2 - f1) / (t2 - t1) * (a - t2));
        }
        std::size_t hi = 1;
        while (samples[hi].first < a) ++hi;
        const auto& [t1, f1] = samples[hi - 1];
        const auto& [t2, f2] = samples[hi];
        return s * (f1 + (f2 - f1) / (t2 - t1) * (a - t1));
      }
    }
    return 0.0;
  }
};

/// Largest delta (up to t_max) such that |f(t)| <= |t|^nu on [0, delta],
/// located on a logarithmic scan grid and bisected to 1e-10. Throws when the
/// bound already fails at the smallest scanned scale, which signals that the
/// declared nu is too large for f.
inline double detect_delta1(const NonlinearitySpec& f, double t_max = 10.0) {
  if (!(f.nu > 1.0)) throw std::invalid_argument("detect_delta1: spec carries no valid nu");
  const double t_min = 1e-12;
  const int scan_points = 4000;
  auto ok = [&](double t) { return std::abs(f.f(t)) <= std::pow(t, f.nu); };

  double prev = t_min;
  if (!ok(t_min))
    throw std::invalid_argument("detect_delta1: |f(t)| > |t|^nu at every scanned scale; nu is wrong");
  const double step = std::log(t_max / t_min) / (scan_points - 1);
  for (int j = 1; j < scan_points; ++j) {
    const double t = t_min * std::exp(step * j);
    if (!ok(t)) {
      double lo = prev, hi = t;  // bound holds at lo, fails at hi
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
      }
      return lo;
    }
    prev = t;
  }
  return t_max;
}

namespace detail {

// adaptive Simpson on [a, b] with absolute tolerance
template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-13) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

/// f truncated at level r. G is C^1 across |t| = r and even; for kinds
/// without an elementary primitive, F = int_0^t f is built once per
/// truncation level by adaptive quadrature on a table and evaluated with
/// cubic Hermite pieces (f itself supplies the exact endpoint slopes).
class TruncatedNonlinearity {
 public:
  TruncatedNonlinearity(NonlinearitySpec base, double r) : base_(std::move(base)), r_(r) {
    if (!(r > 0.0)) throw std::invalid_argument("TruncatedNonlinearity: need r > 0");
    slope_ = base_.f(r) / r;
    if (needs_table()) build_table();
    big_f_at_r_ = primitive(r);
  }

  double level() const { return r_; }
  const NonlinearitySpec& base() const { return base_; }

  /// g(t) = f(t) for |t| <= r, (f(r)/r) t for |t| >= r; continuous and odd.
  double g(double t) const {
    if (std::abs(t) <= r_) return base_.f(t);
    return slope_ * t;
  }

  /// G(t) = int_0^t g(s) ds; even, with the quadratic tail beyond r.
  double G(double t) const {
    const double a = std::abs(t);
    if (a <= r_) return primitive(a);
    return big_f_at_r_ + 0.5 * slope_ * (a * a - r_ * r_);
  }

 private:
  bool needs_table() const {
    return base_.kind == NonlinearitySpec::Kind::OddExp && base_.beta != 0.0;
  }

  // F(t) = int_0^t f for t in [0, r]
  double primitive(double a) const {
    switch (base_.kind) {
      case NonlinearitySpec::Kind::Power:
        return std::pow(a, base_.p) / base_.p;
      case NonlinearitySpec::Kind::OddExp: {
        if (base_.beta == 0.0) {
          const double e = 2.0 * base_.alpha + 2.0;
          return std::pow(a, e) / e;
        }
        return table_eval(a);
      }
      case NonlinearitySpec::Kind::TabulatedOdd: {
        // piecewise-linear f integrates exactly to piecewise quadratics
        double acc = 0.0;
        double t_prev = 0.0, f_prev = 0.0;
        for (const auto& [ts, fs] : base_.samples) {
          if (ts == 0.0) continue;
          if (a <= ts) {
            const double fm = f_prev + (fs - f_prev) / (ts - t_prev) * (a - t_prev);
            return acc + 0.5 * (f_prev + fm) * (a - t_prev);
          }
          acc += 0.5 * (f_prev + fs) * (ts - t_prev);
          t_prev = ts;
          f_prev = fs;
        }
        const double fa = base_.f(a);
        return acc + 0.5 * (f_prev + fa) * (a - t_prev);
      }
    }
    return 0.0;
  }

  void build_table() {
    const int cells = 1024;
    dt_ = r_ / cells;
    table_.resize(cells + 1);
    table_[0] = 0.0;
    auto fn = [this](double s) { return base_.f(s); };
    for (int i = 1; i <= cells; ++i)
      table_[i] = table_[i - 1] + detail::adaptive_simpson(fn, (i - 1) * dt_, i * dt_);
  }

  double table_eval(double a) const {
    const double s = std::min(a / dt_, double(table_.size() - 1));
    const auto cell = std::min(static_cast<std::size_t>(s), table_.size() - 2);
    const double t0 = cell * dt_, t1 = t0 + dt_;
    const double x = (a - t0) / dt_;
    const double y0 = table_[cell], y1 = table_[cell + 1];
    const double d0 = base_.f(t0) * dt_, d1 = base_.f(t1) * dt_;  // exact slopes
    const double x2 = x * x, x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * d0 + (-2 * x3 + 3 * x2) * y1 +
           (x3 - x2) * d1;
  }

  NonlinearitySpec base_;
  double r_;
  double slope_;
  double big_f_at_r_;
  std::vector<double> table_;
  double dt_ = 0.0;
};

}  // namespace ccpde
