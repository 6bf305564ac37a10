#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "smoothed/geometry.hpp"

namespace smoothed {

enum class ModelKind { kRectangleShift, kSquareShift, kAngleShift, kAdditiveNoise };

std::string to_string(ModelKind kind);
/// Accepts "rectangle", "square", "angle", "additive" (and the CamelCase names).
ModelKind parse_model_kind(const std::string& name);

/// Raised when an operation needs an axis-aligned image region but the model
/// moves mass along an arc.
class NotABoxModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One of the four smoothing models with magnitude delta.
///
/// - RectangleShift: v_j -> v_j (1 + delta u_j), u_j in [0, 1]
/// - SquareShift:    v_j -> v_j + delta u_j max_k v_k
/// - AdditiveNoise:  v_j -> v_j + delta u_j v_max
/// - AngleShift (m = 2): same radius, angle uniform on
///   [max(0, t - delta), min(pi/2, t + delta)]
struct PerturbationModel {
  ModelKind kind = ModelKind::kSquareShift;
  double delta = 0.1;
  double v_max = 1.0;  // AdditiveNoise only

  PerturbationModel() = default;
  PerturbationModel(ModelKind kind_, double delta_, double v_max_ = 1.0);

  bool is_box_model() const { return kind != ModelKind::kAngleShift; }
  /// Length of a noise vector for an m-item valuation.
  std::size_t noise_length(std::size_t m) const;
};

/// Normalized noise. Entries in [0, 1], or a single entry in [-1, 1] for
/// AngleShift.
using NoiseVector = Vector;

/// Deterministic perturbation of v given normalized noise.
///
/// For AngleShift the noise entry is mapped affinely onto the clipped angle
/// interval, so uniform noise gives the uniform angle law; for angles at least
/// delta away from both axes this is t + delta * noise.
Vector apply(const PerturbationModel& model, std::span<const double> v,
             std::span<const double> noise);

/// Set of points v can be mapped to (a box for every model except AngleShift).
AxisBox image_region(const PerturbationModel& model, std::span<const double> v);

/// Per-coordinate widths of image_region(model, v), i.e. hi - lo.
Vector image_widths(const PerturbationModel& model, std::span<const double> v);

/// True iff v_hat lies in image_region(model, v).
bool preimage_contains(const PerturbationModel& model, std::span<const double> v,
                       std::span<const double> v_hat, double tol = 0.0);

/// Radii r at which the ray r * trig_vector(angles) meets image_region(model, x).
/// Empty when the ray misses the box.
std::optional<std::pair<double, double>> radial_interval(const PerturbationModel& model,
                                                         std::span<const double> x,
                                                         std::span<const double> angles);

/// Same query against an explicit box.
std::optional<std::pair<double, double>> ray_box_interval(const AxisBox& box,
                                                          std::span<const double> direction);

/// [t (1 - delta), t (1 + delta)] clipped to [0, pi/2]: the angles a
/// RectangleShift perturbation of a point at angle t can reach.
std::pair<double, double> angle_deviation_bound(double theta, double delta);

/// Clipped AngleShift interval [max(0, t - delta), min(pi/2, t + delta)].
std::pair<double, double> angle_shift_interval(double theta, double delta);

}  // namespace smoothed
