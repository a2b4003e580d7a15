#pragma once

// Real density of a diagonal cubic surface: the Leray measure of the cone
// {f = 0} inside the box max|x_i| <= 1, one point per sign pair.
//
// The cone is a union of rays through the boundary of the box, and the Leray
// measure is homogeneous of degree 1 along rays, so the box integral equals an
// integral over the faces y_k = 1 (the faces y_k = -1 carry the sign
// partners). On a face the curve f = 0 is covered by the three charts solving
// for one free coordinate y_c, glued by the smooth partition of unity
//   w_c = (a_c y_c^2)^2 / sum_j (a_j y_j^2)^2,
// which leaves the bounded integrand |a_c| y_c^2 / (3 sum_j a_j^2 y_j^4).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "manin/surface.hpp"

namespace manin {

struct RealDensityResult {
  double value = 0;
  double abs_error_estimate = 0;
  std::uint64_t subdivisions = 0;  // outer intervals integrated
  bool converged = true;
};

namespace detail {

struct Quad {
  double value = 0;
  double error = 0;
};

template <class F>
Quad integrate_pieces(F&& f, std::vector<double> pts, double tol, unsigned max_depth) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Quad q;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    double err = 0;
    q.value += boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, pts[i], pts[i + 1], max_depth, tol,
                                                                            &err);
    q.error += err;
  }
  return q;
}

class FaceChart {
 public:
  FaceChart(const std::array<double, 4>& a, int k, int c, int A, int B, double tol)
      : a_(a), k_(k), c_(c), A_(A), B_(B), tol_(tol) {}

  // Integrand in the chart, with y_k = 1 and y_c solved from f = 0.
  double integrand(double ya, double yb) const {
    std::array<double, 4> y{};
    y[k_] = 1;
    y[A_] = ya;
    y[B_] = yb;
    y[c_] = std::cbrt((-a_[k_] - a_[A_] * ya * ya * ya - a_[B_] * yb * yb * yb) / a_[c_]);
    double den = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == k_) continue;
      const double t = a_[j] * y[j] * y[j];
      den += t * t;
    }
    return std::fabs(a_[c_]) * y[c_] * y[c_] / (3 * den);
  }

  // Integral over y_b of the chart for fixed y_a: y_b ranges where |y_c| <= 1.
  Quad inner(double ya) const {
    const double base = -a_[k_] - a_[A_] * ya * ya * ya;
    double lo = (base - std::fabs(a_[c_])) / a_[B_];
    double hi = (base + std::fabs(a_[c_])) / a_[B_];
    if (lo > hi) std::swap(lo, hi);
    lo = std::max(-1.0, std::cbrt(lo));
    hi = std::min(1.0, std::cbrt(hi));
    if (!(hi > lo)) return {};
    const double z = std::cbrt(base / a_[B_]);  // y_c = 0 there
    if (!(z > lo && z < hi)) {
      return integrate_pieces([&](double yb) { return integrand(ya, yb); }, {lo, hi}, tol_, 8);
    }
    // y_c ~ (y_b - z)^(1/3) near z; y_b = z +- w t^3 makes it smooth in t.
    Quad q;
    for (const double w : {hi - z, lo - z}) {
      const auto piece = integrate_pieces(
          [&](double t) { return integrand(ya, z + w * t * t * t) * 3 * std::fabs(w) * t * t; }, {0.0, 1.0}, tol_, 8);
      q.value += piece.value;
      q.error += piece.error;
    }
    return q;
  }

  // Points in y_a where the inner interval changes shape.
  std::vector<double> outer_breaks() const {
    std::vector<double> pts{-1.0, 1.0};
    auto add = [&](double v) {
      const double z = std::cbrt(v / a_[A_]);
      if (z > -1 && z < 1) pts.push_back(z);
    };
    for (double s1 : {-1.0, 1.0}) {
      for (double s2 : {-1.0, 1.0}) add(-a_[k_] + s1 * std::fabs(a_[c_]) - a_[B_] * s2);
      add(-a_[k_] + s1 * std::fabs(a_[c_]));
    }
    add(-a_[k_]);
    return pts;
  }

 private:
  std::array<double, 4> a_;
  int k_, c_, A_, B_;
  double tol_;
};

}  // namespace detail

/// Real density with a target relative tolerance for each adaptive quadrature.
inline RealDensityResult real_density(const Surface& s, double tol = 1e-8) {
  if (!(tol > 0)) throw std::invalid_argument("real_density: tolerance must be positive");
  std::array<double, 4> a{};
  for (int i = 0; i < 4; ++i) a[i] = static_cast<double>(s.coeff(i));
  RealDensityResult out;
  for (int k = 0; k < 4; ++k) {
    std::array<int, 3> others{};
    int n = 0;
    for (int j = 0; j < 4; ++j) {
      if (j != k) others[n++] = j;
    }
    for (int ci = 0; ci < 3; ++ci) {
      const int c = others[ci];
      const int A = others[(ci + 1) % 3];
      const int B = others[(ci + 2) % 3];
      const detail::FaceChart chart(a, k, c, A, B, tol);
      double inner_error = 0;
      auto outer = [&](double ya) {
        const auto q = chart.inner(ya);
        inner_error = std::max(inner_error, q.error);
        return q.value;
      };
      const auto pts = chart.outer_breaks();
      const auto q = detail::integrate_pieces(outer, pts, tol, 10);
      out.value += q.value;
      out.abs_error_estimate += q.error + 2 * inner_error;
      out.subdivisions += pts.size() - 1;
    }
  }
  out.converged = out.abs_error_estimate <= std::max(1e-3 * out.value, tol);
  return out;
}

}  // namespace manin
