#include "smoothed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace smoothed {

namespace {

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

AxisBox::AxisBox(Vector lo_, Vector hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  require_same_dimension(lo.size(), hi.size(), "AxisBox");
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (!(lo[j] <= hi[j])) {
      throw std::invalid_argument("AxisBox: lo > hi at coordinate " + std::to_string(j));
    }
  }
}

bool AxisBox::contains(std::span<const double> x, double tol) const {
  require_same_dimension(x.size(), lo.size(), "AxisBox::contains");
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (x[j] < lo[j] - tol || x[j] > hi[j] + tol) return false;
  }
  return true;
}

Vector AxisBox::corner(unsigned long long mask) const {
  Vector c(lo.size());
  for (std::size_t j = 0; j < lo.size(); ++j) c[j] = (mask >> j) & 1ULL ? hi[j] : lo[j];
  return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_dimension(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double norm2(std::span<const double> a) {
  // Scaled accumulation; values in the lottery constructions are unit-scale but
  // callers also pass materialized magnitudes.
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : a) {
    const double y = x / scale;
    s += y * y;
  }
  return scale * std::sqrt(s);
}

double sum(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x;
  return s;
}

double max_coord(std::span<const double> a) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : a) m = std::max(m, x);
  return m;
}

PolarPoint to_polar(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("to_polar: empty vector");
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] < 0.0 || std::isnan(v[j])) {
      throw std::invalid_argument("to_polar: negative coordinate at index " + std::to_string(j));
    }
  }
  PolarPoint p;
  p.radius = norm2(v);
  p.angles.assign(v.size() - 1, 0.0);
  if (p.radius == 0.0) return p;
  // tail[j] = || (v_{j+1}, ..., v_m) ||, accumulated from the back.
  const std::size_t m = v.size();
  double tail = v[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) {
    p.angles[j] = std::atan2(tail, v[j]);
    tail = std::hypot(tail, v[j]);
  }
  return p;
}

Vector trig_vector(std::span<const double> angles) {
  Vector t(angles.size() + 1);
  double sin_prod = 1.0;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    t[j] = sin_prod * std::cos(angles[j]);
    sin_prod *= std::sin(angles[j]);
  }
  t.back() = sin_prod;
  // cos(pi/2) is ~6e-17 in binary64; clamp so coordinates stay nonnegative.
  for (double& x : t) x = std::max(x, 0.0);
  return t;
}

Vector from_polar(const PolarPoint& p) {
  Vector x = trig_vector(p.angles);
  for (double& c : x) c *= p.radius;
  return x;
}

double box_min_dot(const AxisBox& box, std::span<const double> w) {
  require_same_dimension(box.dimension(), w.size(), "box_min_dot");
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * (w[j] >= 0.0 ? box.lo[j] : box.hi[j]);
  return s;
}

double box_max_dot(const AxisBox& box, std::span<const double> w) {
  require_same_dimension(box.dimension(), w.size(), "box_max_dot");
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * (w[j] >= 0.0 ? box.hi[j] : box.lo[j]);
  return s;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

constexpr int kPanelNodes = 16;

double composite_sine_power(int power, int panels, const GaussLegendreRule& rule) {
  const double a = 0.0;
  const double b = std::numbers::pi / 2.0;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double t = mid + 0.5 * h * rule.nodes[k];
      s += rule.weights[k] * std::pow(std::sin(t), power);
    }
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace

QuadratureResult sin_power_integral(int m, int quadrature_points) {
  if (m < 2) throw std::invalid_argument("sin_power_integral: m must be >= 2");
  if (quadrature_points < 64) {
    throw std::invalid_argument("sin_power_integral: quadrature_points must be >= 64");
  }
  const auto rule = gauss_legendre(kPanelNodes);
  const int panels = std::max(2, quadrature_points / kPanelNodes);
  double fine = std::numbers::pi / 2.0;
  double coarse = fine;
  for (int j = 1; j <= m - 2; ++j) {
    const int power = m - j - 1;
    fine *= composite_sine_power(power, panels, rule);
    coarse *= composite_sine_power(power, panels / 2, rule);
  }
  return {fine, std::abs(fine - coarse)};
}

double sin_power_integral_bound(int m) {
  const double base = std::sqrt(std::numbers::pi * std::numbers::e / 2.0);
  return std::pow(base, m) * m / std::pow(std::sqrt(static_cast<double>(m)), m);
}

}  // namespace smoothed
