#include "smoothed/perturbation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

namespace smoothed {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_box(const PerturbationModel& model, const char* what) {
  if (!model.is_box_model()) {
    throw NotABoxModelError(std::string(what) +
                            ": AngleShift image is an arc, not an axis-aligned box");
  }
}

void require_nonnegative(std::span<const double> v, const char* what) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!(v[j] >= 0.0)) {
      throw std::invalid_argument(std::string(what) + ": negative value at index " +
                                  std::to_string(j));
    }
  }
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRectangleShift: return "rectangle";
    case ModelKind::kSquareShift: return "square";
    case ModelKind::kAngleShift: return "angle";
    case ModelKind::kAdditiveNoise: return "additive";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  std::string s;
  for (char c : name) {
    if (c != '-' && c != '_') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (s == "rectangle" || s == "rectangleshift" || s == "rect") return ModelKind::kRectangleShift;
  if (s == "square" || s == "squareshift") return ModelKind::kSquareShift;
  if (s == "angle" || s == "angleshift") return ModelKind::kAngleShift;
  if (s == "additive" || s == "additivenoise") return ModelKind::kAdditiveNoise;
  throw std::invalid_argument("unknown perturbation model '" + name + "'");
}

PerturbationModel::PerturbationModel(ModelKind kind_, double delta_, double v_max_)
    : kind(kind_), delta(delta_), v_max(v_max_) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("PerturbationModel: delta must be a finite nonnegative number");
  }
  if (kind == ModelKind::kAdditiveNoise && !(v_max > 0.0)) {
    throw std::invalid_argument("PerturbationModel: v_max must be positive");
  }
}

std::size_t PerturbationModel::noise_length(std::size_t m) const {
  return kind == ModelKind::kAngleShift ? 1 : m;
}

Vector apply(const PerturbationModel& model, std::span<const double> v,
             std::span<const double> noise) {
  const std::size_t m = v.size();
  if (noise.size() != model.noise_length(m)) {
    throw DimensionError("apply: noise length does not match the model");
  }
  require_nonnegative(v, "apply");
  Vector out(v.begin(), v.end());
  switch (model.kind) {
    case ModelKind::kRectangleShift:
      for (std::size_t j = 0; j < m; ++j) {
        if (noise[j] < 0.0 || noise[j] > 1.0) throw std::invalid_argument("apply: noise outside [0,1]");
        out[j] = v[j] * (1.0 + model.delta * noise[j]);
      }
      break;
    case ModelKind::kSquareShift: {
      const double top = max_coord(v);
      for (std::size_t j = 0; j < m; ++j) {
        if (noise[j] < 0.0 || noise[j] > 1.0) throw std::invalid_argument("apply: noise outside [0,1]");
        out[j] = v[j] + model.delta * noise[j] * top;
      }
      break;
    }
    case ModelKind::kAdditiveNoise:
      for (std::size_t j = 0; j < m; ++j) {
        if (noise[j] < 0.0 || noise[j] > 1.0) throw std::invalid_argument("apply: noise outside [0,1]");
        out[j] = v[j] + model.delta * noise[j] * model.v_max;
      }
      break;
    case ModelKind::kAngleShift: {
      if (m != 2) throw std::invalid_argument("apply: AngleShift requires m = 2");
      if (noise[0] < -1.0 || noise[0] > 1.0) throw std::invalid_argument("apply: noise outside [-1,1]");
      const PolarPoint p = to_polar(v);
      const auto [lo, hi] = angle_shift_interval(p.angles[0], model.delta);
      const double theta = lo + 0.5 * (noise[0] + 1.0) * (hi - lo);
      out = from_polar(PolarPoint{p.radius, {theta}});
      break;
    }
  }
  return out;
}

Vector image_widths(const PerturbationModel& model, std::span<const double> v) {
  require_box(model, "image_widths");
  require_nonnegative(v, "image_widths");
  Vector w(v.size());
  const double top = v.empty() ? 0.0 : max_coord(v);
  for (std::size_t j = 0; j < v.size(); ++j) {
    switch (model.kind) {
      case ModelKind::kRectangleShift: w[j] = model.delta * v[j]; break;
      case ModelKind::kSquareShift: w[j] = model.delta * top; break;
      case ModelKind::kAdditiveNoise: w[j] = model.delta * model.v_max; break;
      case ModelKind::kAngleShift: break;
    }
  }
  return w;
}

AxisBox image_region(const PerturbationModel& model, std::span<const double> v) {
  const Vector w = image_widths(model, v);
  Vector lo(v.begin(), v.end());
  Vector hi(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) hi[j] = lo[j] + w[j];
  return AxisBox(std::move(lo), std::move(hi));
}

bool preimage_contains(const PerturbationModel& model, std::span<const double> v,
                       std::span<const double> v_hat, double tol) {
  return image_region(model, v).contains(v_hat, tol);
}

std::optional<std::pair<double, double>> ray_box_interval(const AxisBox& box,
                                                          std::span<const double> direction) {
  if (direction.size() != box.dimension()) throw DimensionError("ray_box_interval: dimension mismatch");
  double r_lo = 0.0;
  double r_hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < direction.size(); ++j) {
    const double d = direction[j];
    if (d > 0.0) {
      r_lo = std::max(r_lo, box.lo[j] / d);
      r_hi = std::min(r_hi, box.hi[j] / d);
    } else if (box.lo[j] > 0.0) {
      return std::nullopt;  // ray stays at coordinate 0 and the box does not
    }
  }
  // Degenerate boxes hit exactly by the ray differ by rounding only.
  if (r_lo > r_hi * (1.0 + 1e-12)) return std::nullopt;
  return std::make_pair(r_lo, std::max(r_lo, r_hi));
}

std::optional<std::pair<double, double>> radial_interval(const PerturbationModel& model,
                                                         std::span<const double> x,
                                                         std::span<const double> angles) {
  if (model.kind != ModelKind::kRectangleShift && model.kind != ModelKind::kSquareShift) {
    throw NotABoxModelError("radial_interval: only RectangleShift and SquareShift are supported");
  }
  if (angles.size() + 1 != x.size()) throw DimensionError("radial_interval: need m - 1 angles");
  return ray_box_interval(image_region(model, x), trig_vector(angles));
}

std::pair<double, double> angle_deviation_bound(double theta, double delta) {
  const double lo = std::clamp(theta * (1.0 - delta), 0.0, kHalfPi);
  const double hi = std::clamp(theta * (1.0 + delta), 0.0, kHalfPi);
  return {lo, hi};
}

std::pair<double, double> angle_shift_interval(double theta, double delta) {
  return {std::max(0.0, theta - delta), std::min(kHalfPi, theta + delta)};
}

}  // namespace smoothed
