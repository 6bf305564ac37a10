#pragma once

#include "smoothed/distributions.hpp"

namespace smoothed {

/// Law of shift + sum_k w_k U_k with independent U_k ~ U[0, 1].
///
/// The CDF is the inclusion-exclusion form of the Irwin-Hall distribution,
///   F(y) = (1 / (k! prod w)) sum_A (-1)^|A| (y - W_A)_+^k,
/// evaluated on the lower half of the support and mirrored onto the upper
/// half (the law is symmetric), which keeps the alternating sum short.
/// Widths below 1e-8 of the largest are folded into the shift at their mean;
/// this moves the CDF by at most (number of folded widths) * 1e-8 / 2.
class UniformSum {
 public:
  static constexpr std::size_t kMaxTerms = 8;
  static constexpr double kFoldRatio = 1e-8;

  UniformSum() = default;
  UniformSum(double shift, const Vector& widths);

  double lo() const { return shift_; }
  double hi() const { return shift_ + total_; }
  std::size_t terms() const { return widths_.size(); }
  bool is_point() const { return widths_.empty(); }

  double cdf(double x) const;
  /// Pr[S >= x].
  double tail(double x) const;
  double density(double x) const;
  double mean() const { return shift_ + 0.5 * total_; }
  /// Sorted distinct subset sums: the knots of the piecewise polynomial.
  Vector breakpoints() const;

 private:
  double lower_cdf(double y) const;  // y in [0, total/2], relative to shift
  double lower_density(double y) const;

  double shift_ = 0.0;
  double total_ = 0.0;
  Vector widths_;  // ascending, all positive
  double inv_prod_ = 1.0;
};

/// Law of r (cos t + sin t) for t uniform on [a, b] within [0, pi/2].
class ArcLaw {
 public:
  ArcLaw() = default;
  ArcLaw(double radius, double a, double b);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_point() const { return !(b_ > a_) || radius_ == 0.0; }

  double tail(double x) const;
  double density(double x) const;
  double mean() const;
  Vector breakpoints() const;

 private:
  double radius_ = 0.0;
  double a_ = 0.0;
  double b_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Bundle-value law of one perturbed atom, in the atom's own unit frame
/// (the absolute bundle value is exp(ln_scale) times a draw from this law).
class BundleLaw {
 public:
  explicit BundleLaw(UniformSum s) : sum_(std::move(s)), arc_(false) {}
  explicit BundleLaw(ArcLaw a) : angle_(a), arc_(true) {}

  double lo() const { return arc_ ? angle_.lo() : sum_.lo(); }
  double hi() const { return arc_ ? angle_.hi() : sum_.hi(); }
  bool is_point() const { return arc_ ? angle_.is_point() : sum_.is_point(); }
  double tail(double x) const { return arc_ ? angle_.tail(x) : sum_.tail(x); }
  double density(double x) const { return arc_ ? angle_.density(x) : sum_.density(x); }
  double mean() const { return arc_ ? angle_.mean() : sum_.mean(); }
  Vector breakpoints() const { return arc_ ? angle_.breakpoints() : sum_.breakpoints(); }

 private:
  UniformSum sum_;
  ArcLaw angle_;
  bool arc_;
};

/// Law of sum_j vhat_j / exp(atom.ln_scale) for the atom perturbed by model.
BundleLaw bundle_law(const PerturbationModel& model, const Atom& atom);
/// Point law at sum_j unit_j (no perturbation).
BundleLaw point_law(const Atom& atom);

/// Mixture component: law in the unit frame, its scale and its probability.
struct LawAtom {
  BundleLaw law;
  double ln_scale = 0.0;
  double ln_prob = 0.0;
};

/// One component per base atom, plus the origin residual when it has mass.
/// The residual is a point at 0 except under AdditiveNoise, which moves it.
std::vector<LawAtom> bundle_laws(const SmoothedDistribution& dist);
/// Unperturbed point laws of the base atoms (origin omitted).
std::vector<LawAtom> bundle_laws(const DiscreteDistribution& dist);

}  // namespace smoothed
