#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace smoothed {

/// Dense real vector. Item values, lottery allocations and dot-product weights
/// all use this; nonnegativity is checked where an operation requires it.
using Vector = std::vector<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hyperspherical coordinates restricted to the nonnegative orthant.
///
/// Convention: x_1 = r cos(t_1), x_2 = r sin(t_1) cos(t_2), ...,
/// x_m = r sin(t_1) ... sin(t_{m-1}). Every angle lies in [0, pi/2].
struct PolarPoint {
  double radius = 0.0;
  Vector angles;  // m - 1 entries

  std::size_t dimension() const { return angles.size() + 1; }
};

/// Axis-aligned box [lo, hi] with lo <= hi coordinatewise.
struct AxisBox {
  Vector lo;
  Vector hi;

  AxisBox() = default;
  AxisBox(Vector lo_, Vector hi_);

  std::size_t dimension() const { return lo.size(); }
  bool contains(std::span<const double> x, double tol = 0.0) const;
  /// Number of corners is 2^dimension(); corner bit j selects hi[j].
  Vector corner(unsigned long long mask) const;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double sum(std::span<const double> a);
double max_coord(std::span<const double> a);

/// Throws std::invalid_argument on a negative coordinate. The origin maps to
/// radius 0 with all angles 0.
PolarPoint to_polar(std::span<const double> v);
Vector from_polar(const PolarPoint& p);

/// Unit direction for the given m-1 angles: trig_j = cos(t_j) prod_{k<j} sin(t_k),
/// with the last coordinate the full sine product.
Vector trig_vector(std::span<const double> angles);

/// min over x in box of x . w. Attained coordinatewise at lo[j] when w[j] >= 0
/// and hi[j] otherwise.
double box_min_dot(const AxisBox& box, std::span<const double> w);
double box_max_dot(const AxisBox& box, std::span<const double> w);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  Vector nodes;
  Vector weights;
};
GaussLegendreRule gauss_legendre(int n);

/// Integral over [0, pi/2]^{m-1} of prod_{j=1}^{m-2} sin(t_j)^{m-j-1}.
///
/// The integrand separates, so this is pi/2 times a product of one-dimensional
/// sine-power integrals, each evaluated by composite Gauss-Legendre with
/// `quadrature_points` total nodes (16-node panels). The error estimate is the
/// difference against a rule with half as many panels.
QuadratureResult sin_power_integral(int m, int quadrature_points = 256);

/// (sqrt(pi e / 2))^m * m / sqrt(m)^m.
double sin_power_integral_bound(int m);

}  // namespace smoothed
