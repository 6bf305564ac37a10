#include <cmath>
#include <numbers>

#include "doctest.h"
#include "smoothed/geometry.hpp"
#include "smoothed/rng.hpp"

using namespace smoothed;
using doctest::Approx;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

Vector random_angles(Rng& rng, std::size_t m) {
  Vector a(m - 1);
  for (double& t : a) t = rng.uniform(0.0, kHalfPi);
  return a;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("to_polar on axis, diagonal and 3-4-5 points") {
  PolarPoint p = to_polar(Vector{1.0, 0.0});
  CHECK(p.radius == Approx(1.0));
  CHECK(p.angles[0] == Approx(0.0));

  p = to_polar(Vector{1.0, 1.0});
  CHECK(p.radius == Approx(std::numbers::sqrt2));
  CHECK(p.angles[0] == Approx(std::numbers::pi / 4));

  p = to_polar(Vector{3.0, 4.0});
  CHECK(p.radius == Approx(5.0));
  CHECK(p.angles[0] == Approx(std::atan2(4.0, 3.0)).epsilon(1e-12));
  const Vector back = from_polar(p);
  CHECK(back[0] == Approx(3.0).epsilon(1e-12));
  CHECK(back[1] == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("origin maps to zero radius and zero angles") {
  const PolarPoint p = to_polar(Vector{0.0, 0.0, 0.0});
  CHECK(p.radius == 0.0);
  CHECK(p.angles == Vector{0.0, 0.0});
}

TEST_CASE("negative coordinates are rejected") { CHECK_THROWS_AS(to_polar(Vector{1.0, -0.5}), std::invalid_argument); }

TEST_CASE("from_polar examples") {
  Vector x = from_polar({1.0, {0.0}});
  CHECK(x[0] == Approx(1.0));
  CHECK(x[1] == Approx(0.0));

  x = from_polar({2.0, {kHalfPi}});
  CHECK(x[0] == Approx(0.0).epsilon(1e-15));
  CHECK(x[1] == Approx(2.0));

  x = from_polar({1.0, {std::numbers::pi / 4, std::numbers::pi / 3}});
  CHECK(x[0] == Approx(0.70711).epsilon(1e-5));
  CHECK(x[1] == Approx(0.35355).epsilon(1e-5));
  CHECK(x[2] == Approx(0.61237).epsilon(1e-5));
  CHECK(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("polar round trip on random nonnegative vectors") {
  Rng rng(11);
  double worst = 0.0;
  for (int t = 0; t < 100000; ++t) {
    const std::size_t m = 2 + rng.below(7);
    Vector v(m);
    for (double& x : v) x = rng.uniform01() < 0.1 ? 0.0 : rng.uniform(0.0, 10.0);
    const Vector back = from_polar(to_polar(v));
    const double scale = std::sqrt(norm2(v));
    for (std::size_t j = 0; j < m; ++j) worst = std::max(worst, std::abs(back[j] - v[j]) / std::max(scale, 1e-300));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("trig_vector examples") {
  Vector t = trig_vector(Vector{std::numbers::pi / 4});
  CHECK(t[0] == Approx(std::sqrt(0.5)));
  CHECK(t[1] == Approx(std::sqrt(0.5)));
  t = trig_vector(Vector{std::numbers::pi / 4, std::numbers::pi / 3});
  CHECK(max_coord(t) == Approx(0.70711).epsilon(1e-5));
  CHECK(max_coord(t) >= 1.0 / std::sqrt(3.0));
  t = trig_vector(Vector{0.0});
  CHECK(t == Vector{1.0, 0.0});
}

TEST_CASE("trig_vector has unit norm and a coordinate of at least 1/sqrt(m)") {
  Rng rng(12);
  for (int t = 0; t < 20000; ++t) {
    const std::size_t m = 2 + rng.below(7);
    const Vector v = trig_vector(random_angles(rng, m));
    REQUIRE(norm2(v) == Approx(1.0).epsilon(1e-12));
    // a unit vector with every coordinate below 1/sqrt(m) has squared norm below 1
    REQUIRE(max_coord(v) >= 1.0 / std::sqrt(static_cast<double>(m)) - 1e-15);
  }
}

TEST_CASE("box_min_dot examples") {
  const AxisBox box({1.0, 2.0}, {1.1, 2.2});
  CHECK(box_min_dot(box, Vector{1.0, -1.0}) == Approx(-1.2));
  CHECK(box_min_dot(box, Vector{0.0, 0.0}) == 0.0);
  const AxisBox point({3.0, 0.5}, {3.0, 0.5});
  CHECK(box_min_dot(point, Vector{-2.0, 7.0}) == Approx(-6.0 + 3.5));
}

TEST_CASE("box_min_dot and box_max_dot agree with corner enumeration") {
  Rng rng(13);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t m = 1 + rng.below(10);
    Vector lo(m), hi(m), w(m);
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = rng.uniform(-2.0, 2.0);
      hi[j] = lo[j] + rng.uniform(0.0, 1.0);
      w[j] = rng.uniform(-1.0, 1.0);
    }
    const AxisBox box(lo, hi);
    double best_lo = 1e300;
    double best_hi = -1e300;
    for (unsigned long long mask = 0; mask < (1ULL << m); ++mask) {
      double d = 0.0;
      for (std::size_t j = 0; j < m; ++j) d += w[j] * (((mask >> j) & 1ULL) ? hi[j] : lo[j]);
      best_lo = std::min(best_lo, d);
      best_hi = std::max(best_hi, d);
    }
    REQUIRE(box_min_dot(box, w) == Approx(best_lo).epsilon(1e-12));
    REQUIRE(box_max_dot(box, w) == Approx(best_hi).epsilon(1e-12));
  }
}

TEST_CASE("AxisBox rejects inverted bounds") { CHECK_THROWS(AxisBox({1.0}, {0.5})); }

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  for (int n : {2, 5, 16}) {
    const GaussLegendreRule rule = gauss_legendre(n);
    double w = 0.0;
    for (double x : rule.weights) w += x;
    CHECK(w == Approx(2.0).epsilon(1e-14));
    double moment = 0.0;
    for (int i = 0; i < n; ++i) moment += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 2);
    CHECK(moment == Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
  }
}

TEST_CASE("sin_power_integral matches the Gamma-function closed form") {
  for (int m = 2; m <= 8; ++m) {
    // (pi/2) prod_{k=1}^{m-2} int_0^{pi/2} sin^k = (pi/2) (sqrt(pi)/2)^{m-2} / Gamma(m/2)
    const double closed = kHalfPi * std::pow(std::sqrt(std::numbers::pi) / 2.0, m - 2) / std::tgamma(m / 2.0);
    const QuadratureResult q = sin_power_integral(m);
    CHECK(q.value == Approx(closed).epsilon(1e-12));
    CHECK(q.error_estimate <= 1e-10);
  }
  CHECK(sin_power_integral(2).value == Approx(kHalfPi));
  CHECK(sin_power_integral(3).value == Approx(kHalfPi));
}

TEST_CASE("sin_power_integral stays below its bound") {
  for (int m = 2; m <= 8; ++m) {
    const QuadratureResult q = sin_power_integral(m);
    const double bound = std::pow(std::sqrt(std::numbers::pi * std::numbers::e / 2.0), m) * m /
                         std::pow(std::sqrt(static_cast<double>(m)), m);
    CHECK(sin_power_integral_bound(m) == Approx(bound).epsilon(1e-14));
    CHECK(q.value <= bound + q.error_estimate);
  }
  CHECK(sin_power_integral_bound(4) == Approx(4.55794128712).epsilon(1e-10));
}

}  // TEST_SUITE
