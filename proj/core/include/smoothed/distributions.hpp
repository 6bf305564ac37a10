#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smoothed/geometry.hpp"
#include "smoothed/log_scaled.hpp"
#include "smoothed/perturbation.hpp"
#include "smoothed/rng.hpp"

namespace smoothed {

/// Support point of a discrete distribution.
///
/// The value vector is exp(ln_scale) * unit; keeping the magnitude separate
/// lets constructions carry atoms such as M_i x_i with M_i far outside binary64
/// range. Probabilities are stored as logarithms for the same reason.
struct Atom {
  Vector unit;
  double ln_scale = 0.0;
  double ln_prob = 0.0;

  static Atom plain(Vector value, double prob);

  double prob() const { return std::exp(ln_prob); }
  double scale() const { return std::exp(ln_scale); }
  /// exp(ln_scale) * unit; entries overflow to inf when the scale is huge.
  Vector value() const;
  LogScaled bundle_value() const;
};

/// Finite-support distribution over m-item valuations. Mass not assigned to
/// any atom sits at the origin.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;
  explicit DiscreteDistribution(std::size_t m, std::vector<Atom> atoms = {});

  std::size_t items() const { return m_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  void add(Atom atom) { atoms_.push_back(std::move(atom)); }
  void add(Vector value, double prob) { atoms_.push_back(Atom::plain(std::move(value), prob)); }

  /// ln of the total atom mass.
  double ln_mass() const;
  /// 1 - total atom mass, clamped at 0.
  double residual() const;
  /// True when every atom has scale 1.
  bool is_plain() const;

 private:
  std::size_t m_ = 0;
  std::vector<Atom> atoms_;
};

/// One joint value profile of n buyers over m items.
struct Profile {
  std::vector<Vector> values;  // n rows of length m
  double prob = 0.0;
};

class JointDiscreteDistribution {
 public:
  JointDiscreteDistribution() = default;
  JointDiscreteDistribution(std::size_t n, std::size_t m, std::vector<Profile> profiles = {});

  std::size_t buyers() const { return n_; }
  std::size_t items() const { return m_; }
  const std::vector<Profile>& profiles() const { return profiles_; }
  void add(Profile p) { profiles_.push_back(std::move(p)); }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<Profile> profiles_;
};

/// Base distribution followed by an independent perturbation of every draw.
struct SmoothedDistribution {
  DiscreteDistribution base;
  PerturbationModel model;
};

struct SmoothedJointDistribution {
  JointDiscreteDistribution base;
  PerturbationModel model;
};

/// First violated invariant, if any.
struct Violation {
  std::string message;
  std::optional<std::size_t> index;  // atom or profile index
};

using ValidationReport = std::optional<Violation>;  // empty means ok

ValidationReport validate(const DiscreteDistribution& dist);
ValidationReport validate(const JointDiscreteDistribution& dist);
ValidationReport validate(const SmoothedDistribution& dist);
ValidationReport validate(const SmoothedJointDistribution& dist);

/// Throws std::invalid_argument carrying the violation message.
void require_valid(const ValidationReport& report);

/// Index of a base atom drawn by probability, or nullopt for the origin.
std::optional<std::size_t> sample_atom(const DiscreteDistribution& dist, Rng& rng);

/// Draws a base value then perturbs it with fresh uniform noise.
Vector sample(const SmoothedDistribution& dist, Rng& rng);
/// Noise is drawn independently for each buyer.
std::vector<Vector> sample(const SmoothedJointDistribution& dist, Rng& rng);

/// Exact Pr[sum_j vhat_j >= p]. Requires m <= 8 for box models; AngleShift is
/// evaluated by arc length. Throws std::invalid_argument beyond that.
double bundle_tail(const SmoothedDistribution& dist, double p);

/// Pr[sum_j v_j >= p] for the unperturbed base.
double bundle_tail(const DiscreteDistribution& dist, double p);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of Pr[sum_j vhat_j >= p]. One base seed is drawn from
/// rng; chunk c of 4096 samples uses derive_seed(base, c).
Estimate bundle_tail_mc(const SmoothedDistribution& dist, double p, std::size_t samples, Rng& rng);

/// k i.i.d. draws as atoms of probability 1/k; exact duplicates merge.
DiscreteDistribution discretize(const SmoothedDistribution& dist, std::size_t k, Rng& rng);

double expected_welfare(const DiscreteDistribution& dist);
/// Closed form: adds half of every image width (box models) or the mean of
/// r (cos t + sin t) over the angle interval (AngleShift).
double expected_welfare(const SmoothedDistribution& dist);
double expected_welfare(const JointDiscreteDistribution& dist);

}  // namespace smoothed
