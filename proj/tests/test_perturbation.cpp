#include <cmath>
#include <numbers>
#include <tuple>

#include "doctest.h"
#include "smoothed/perturbation.hpp"
#include "smoothed/rng.hpp"

using namespace smoothed;
using doctest::Approx;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

const PerturbationModel kRect01(ModelKind::kRectangleShift, 0.1);
const PerturbationModel kSquare01(ModelKind::kSquareShift, 0.1);

Vector random_value(Rng& rng, std::size_t m) {
  Vector v(m);
  for (double& x : v) x = rng.uniform01() < 0.1 ? 0.0 : rng.uniform(0.0, 5.0);
  return v;
}

Vector random_noise(Rng& rng, const PerturbationModel& model, std::size_t m) {
  Vector u(model.noise_length(m));
  for (double& x : u) x = model.kind == ModelKind::kAngleShift ? rng.uniform(-1.0, 1.0) : rng.uniform01();
  return u;
}

}  // namespace

TEST_SUITE("perturbation") {

TEST_CASE("apply examples") {
  Vector out = apply(kRect01, Vector{4.0, 2.0}, Vector{1.0, 1.0});
  CHECK(out[0] == Approx(4.4));
  CHECK(out[1] == Approx(2.2));
  out = apply(kSquare01, Vector{4.0, 2.0}, Vector{0.5, 1.0});
  CHECK(out[0] == Approx(4.2));
  CHECK(out[1] == Approx(2.4));
  for (ModelKind k : {ModelKind::kRectangleShift, ModelKind::kSquareShift, ModelKind::kAdditiveNoise}) {
    CHECK(apply(PerturbationModel(k, 0.3), Vector{1.5, 0.5}, Vector{0.0, 0.0}) == Vector{1.5, 0.5});
  }
}

TEST_CASE("apply rejects noise outside the unit range and bad lengths") {
  CHECK_THROWS(apply(kRect01, Vector{1.0, 1.0}, Vector{1.5, 0.0}));
  CHECK_THROWS_AS(apply(kRect01, Vector{1.0, 1.0}, Vector{0.5}), DimensionError);
  CHECK_THROWS(apply(PerturbationModel(ModelKind::kAngleShift, 0.1), Vector{1.0, 1.0, 1.0}, Vector{0.0}));
}

TEST_CASE("image_region examples") {
  AxisBox box = image_region(kRect01, Vector{4.0, 2.0});
  CHECK(box.lo == Vector{4.0, 2.0});
  CHECK(box.hi[0] == Approx(4.4));
  CHECK(box.hi[1] == Approx(2.2));
  box = image_region(kSquare01, Vector{4.0, 2.0});
  CHECK(box.hi[0] == Approx(4.4));
  CHECK(box.hi[1] == Approx(2.4));
  for (const auto& model : {kRect01, kSquare01}) {
    box = image_region(model, Vector{0.0, 0.0});
    CHECK(box.lo == box.hi);
  }
  CHECK_THROWS_AS(image_region(PerturbationModel(ModelKind::kAngleShift, 0.1), Vector{1.0, 1.0}),
                  NotABoxModelError);
}

TEST_CASE("preimage_contains examples") {
  CHECK(preimage_contains(kRect01, Vector{4.0, 2.0}, Vector{4.3, 2.1}));
  CHECK_FALSE(preimage_contains(kRect01, Vector{4.0, 2.0}, Vector{4.5, 2.1}));
  CHECK(preimage_contains(kRect01, Vector{4.0, 2.0}, Vector{4.0, 2.0}));
}

TEST_CASE("box models dominate and stay inside their image region") {
  Rng rng(31);
  for (ModelKind k : {ModelKind::kRectangleShift, ModelKind::kSquareShift, ModelKind::kAdditiveNoise}) {
    for (int t = 0; t < 20000; ++t) {
      const std::size_t m = 1 + rng.below(8);
      const PerturbationModel model(k, rng.uniform(0.0, 1.0), 5.0);
      const Vector v = random_value(rng, m);
      const Vector out = apply(model, v, random_noise(rng, model, m));
      for (std::size_t j = 0; j < m; ++j) REQUIRE(out[j] >= v[j]);
      REQUIRE(preimage_contains(model, v, out, 1e-12));
    }
  }
}

TEST_CASE("AngleShift keeps the norm and stays in the clipped interval") {
  Rng rng(32);
  for (int t = 0; t < 20000; ++t) {
    const PerturbationModel model(ModelKind::kAngleShift, rng.uniform(0.0, kHalfPi));
    const Vector v = random_value(rng, 2);
    const Vector out = apply(model, v, random_noise(rng, model, 2));
    REQUIRE(norm2(out) == Approx(norm2(v)).epsilon(1e-12));
    if (norm2(v) > 0.0) {
      const double theta = to_polar(v).angles[0];
      const double got = to_polar(out).angles[0];
      REQUIRE(got >= std::max(0.0, theta - model.delta) - 1e-12);
      REQUIRE(got <= std::min(kHalfPi, theta + model.delta) + 1e-12);
    }
  }
}

TEST_CASE("angle_shift_interval clips at the axes") {
  auto [a, b] = angle_shift_interval(0.05, 0.1);
  CHECK(a == 0.0);
  CHECK(b == Approx(0.15));
  std::tie(a, b) = angle_shift_interval(kHalfPi, 0.1);
  CHECK(a == Approx(kHalfPi - 0.1));
  CHECK(b == Approx(kHalfPi));
}

TEST_CASE("radial_interval examples") {
  const auto r = radial_interval(kSquare01, Vector{1.0, 1.0}, Vector{std::numbers::pi / 4});
  REQUIRE(r.has_value());
  CHECK(r->first == Approx(std::numbers::sqrt2));
  CHECK(r->second == Approx(1.1 * std::numbers::sqrt2));
  CHECK(r->second / r->first == Approx(1.1).epsilon(1e-14));
  CHECK_FALSE(radial_interval(kSquare01, Vector{1.0, 1.0}, Vector{0.0}).has_value());
}

TEST_CASE("radial interval ratio is at most 1 + delta") {
  Rng rng(33);
  std::size_t hits = 0;
  for (int t = 0; t < 100000; ++t) {
    const ModelKind kind = (t % 2) ? ModelKind::kRectangleShift : ModelKind::kSquareShift;
    const std::size_t m = 2 + rng.below(3);
    const PerturbationModel model(kind, rng.uniform(0.0, 1.0));
    Vector x(m);
    for (double& c : x) c = rng.uniform(0.01, 1.0);
    // aim near the box so a good share of rays hit it
    Vector target = apply(model, x, random_noise(rng, model, m));
    for (double& c : target) c *= rng.uniform(0.98, 1.02);
    const PolarPoint p = to_polar(target);
    const auto r = radial_interval(model, x, p.angles);
    if (!r) continue;
    ++hits;
    REQUIRE(r->second <= (1.0 + model.delta) * r->first * (1.0 + 1e-12));
  }
  CHECK(hits > 10000);
}

TEST_CASE("angle_deviation_bound examples") {
  auto [lo, hi] = angle_deviation_bound(0.0, 0.3);
  CHECK(lo == 0.0);
  CHECK(hi == 0.0);
  std::tie(lo, hi) = angle_deviation_bound(0.4, 0.1);
  CHECK(lo == Approx(0.36));
  CHECK(hi == Approx(0.44));
}

TEST_CASE("RectangleShift corners keep the polar angle within the deviation bound") {
  Rng rng(34);
  for (int t = 0; t < 10000; ++t) {
    const double r = rng.uniform(0.01, 10.0);
    const double theta = rng.uniform(0.0, kHalfPi);
    const double delta = rng.uniform(0.0, 0.5);
    const Vector x = from_polar({r, {theta}});
    const AxisBox box = image_region(PerturbationModel(ModelKind::kRectangleShift, delta), x);
    const auto [lo, hi] = angle_deviation_bound(theta, delta);
    for (unsigned long long mask = 0; mask < 4; ++mask) {
      const double got = to_polar(box.corner(mask)).angles[0];
      REQUIRE(got >= lo - 1e-12);
      REQUIRE(got <= hi + 1e-12);
    }
  }
}

TEST_CASE("model names round trip") {
  for (ModelKind k : {ModelKind::kRectangleShift, ModelKind::kSquareShift, ModelKind::kAngleShift,
                      ModelKind::kAdditiveNoise}) {
    CHECK(parse_model_kind(to_string(k)) == k);
  }
  CHECK(parse_model_kind("SquareShift") == ModelKind::kSquareShift);
  CHECK_THROWS(parse_model_kind("circle"));
  CHECK_THROWS(PerturbationModel(ModelKind::kSquareShift, -0.1));
}

}  // TEST_SUITE
