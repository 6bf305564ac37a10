#include "smoothed/bundle_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smoothed {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Calls visit(W_A, |A| odd) for every subset A of the ascending widths with
// W_A < y. Ascending order lets a branch stop at the first width that
// overshoots.
template <class Visit>
void visit_subsets_below(const Vector& w, double y, Visit&& visit) {
  struct Frame {
    std::size_t next;
    double sum;
    bool odd;
  };
  // a frame pushes at most one child per remaining width
  Frame stack[UniformSum::kMaxTerms * (UniformSum::kMaxTerms + 1) / 2 + 1];
  std::size_t top = 0;
  stack[top++] = {0, 0.0, false};
  while (top > 0) {
    const Frame f = stack[--top];
    visit(f.sum, f.odd);
    for (std::size_t i = w.size(); i-- > f.next;) {
      // pushed in reverse so smaller widths pop first; prune on overshoot
      if (f.sum + w[i] < y) stack[top++] = {i + 1, f.sum + w[i], !f.odd};
    }
  }
}

}  // namespace

UniformSum::UniformSum(double shift, const Vector& widths) : shift_(shift) {
  double wmax = 0.0;
  for (double w : widths) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("UniformSum: widths must be finite and >= 0");
    wmax = std::max(wmax, w);
  }
  for (double w : widths) {
    if (w == 0.0) continue;
    if (w < kFoldRatio * wmax) {
      shift_ += 0.5 * w;
    } else {
      widths_.push_back(w);
    }
  }
  if (widths_.size() > kMaxTerms) {
    throw std::invalid_argument("UniformSum: exact evaluation supports at most 8 nonzero widths");
  }
  std::sort(widths_.begin(), widths_.end());
  for (double w : widths_) total_ += w;
  double prod = 1.0;
  double fact = 1.0;
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    widths_[i] /= total_;
    prod *= widths_[i];
    fact *= static_cast<double>(i + 1);
  }
  inv_prod_ = 1.0 / (fact * prod);
}

double UniformSum::lower_cdf(double y) const {
  const auto k = static_cast<int>(widths_.size());
  double acc = 0.0;
  visit_subsets_below(widths_, y, [&](double s, bool odd) {
    const double t = std::pow(y - s, k);
    acc += odd ? -t : t;
  });
  return std::clamp(acc * inv_prod_, 0.0, 1.0);
}

double UniformSum::lower_density(double y) const {
  const auto k = static_cast<int>(widths_.size());
  double acc = 0.0;
  visit_subsets_below(widths_, y, [&](double s, bool odd) {
    const double t = std::pow(y - s, k - 1);
    acc += odd ? -t : t;
  });
  return std::max(0.0, acc * inv_prod_ * k);
}

double UniformSum::cdf(double x) const {
  if (is_point()) return x >= shift_ ? 1.0 : 0.0;
  const double y = (x - shift_) / total_;
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  return y <= 0.5 ? lower_cdf(y) : 1.0 - lower_cdf(1.0 - y);
}

double UniformSum::tail(double x) const {
  if (is_point()) return x <= shift_ ? 1.0 : 0.0;
  const double y = (x - shift_) / total_;
  if (y <= 0.0) return 1.0;
  if (y >= 1.0) return 0.0;
  return y <= 0.5 ? 1.0 - lower_cdf(y) : lower_cdf(1.0 - y);
}

double UniformSum::density(double x) const {
  if (is_point()) return 0.0;
  const double y = (x - shift_) / total_;
  if (y <= 0.0 || y >= 1.0) return 0.0;
  return lower_density(std::min(y, 1.0 - y)) / total_;
}

Vector UniformSum::breakpoints() const {
  Vector out;
  visit_subsets_below(widths_, 2.0, [&](double s, bool) { out.push_back(shift_ + s * total_); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ArcLaw::ArcLaw(double radius, double a, double b) : radius_(radius), a_(a), b_(b) {
  if (!(radius >= 0.0) || !(a >= 0.0) || !(b >= a) || b > std::numbers::pi / 2 + 1e-15) {
    throw std::invalid_argument("ArcLaw: need radius >= 0 and 0 <= a <= b <= pi/2");
  }
  const auto g = [&](double t) { return radius_ * (std::cos(t) + std::sin(t)); };
  lo_ = std::min(g(a_), g(b_));
  hi_ = (a_ <= kQuarterPi && kQuarterPi <= b_) ? radius_ * std::numbers::sqrt2 : std::max(g(a_), g(b_));
  if (is_point()) hi_ = lo_ = g(a_);
}

double ArcLaw::tail(double x) const {
  if (is_point()) return x <= lo_ ? 1.0 : 0.0;
  if (x <= lo_) return 1.0;
  if (x > hi_) return 0.0;
  if (x <= radius_) return 1.0;  // every angle in [0, pi/2] reaches r
  const double c = std::min(1.0, x / (std::numbers::sqrt2 * radius_));
  const double s = std::asin(c);
  const double left = std::max(a_, s - kQuarterPi);
  const double right = std::min(b_, 3.0 * kQuarterPi - s);
  return right > left ? (right - left) / (b_ - a_) : 0.0;
}

double ArcLaw::density(double x) const {
  if (is_point() || x <= lo_ || x >= hi_ || x <= radius_) return 0.0;
  const double c = x / (std::numbers::sqrt2 * radius_);
  if (c >= 1.0) return 0.0;
  const double s = std::asin(c);
  int active = 0;
  if (s - kQuarterPi > a_) ++active;
  if (3.0 * kQuarterPi - s < b_) ++active;
  const double rate = 1.0 / (std::numbers::sqrt2 * radius_ * std::sqrt(1.0 - c * c));
  return active * rate / (b_ - a_);
}

double ArcLaw::mean() const {
  if (is_point()) return lo_;
  return radius_ * (std::sin(b_) - std::sin(a_) + std::cos(a_) - std::cos(b_)) / (b_ - a_);
}

Vector ArcLaw::breakpoints() const {
  const auto g = [&](double t) { return radius_ * (std::cos(t) + std::sin(t)); };
  Vector out{lo_, hi_};
  if (!is_point()) {
    out.push_back(g(a_));
    out.push_back(g(b_));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BundleLaw bundle_law(const PerturbationModel& model, const Atom& atom) {
  const Vector& u = atom.unit;
  const double base = sum(u);
  const std::size_t m = u.size();
  switch (model.kind) {
    case ModelKind::kRectangleShift: {
      Vector w(m);
      for (std::size_t j = 0; j < m; ++j) w[j] = model.delta * u[j];
      return BundleLaw(UniformSum(base, w));
    }
    case ModelKind::kSquareShift:
      return BundleLaw(UniformSum(base, Vector(m, model.delta * max_coord(u))));
    case ModelKind::kAdditiveNoise:
      return BundleLaw(UniformSum(base, Vector(m, model.delta * model.v_max * std::exp(-atom.ln_scale))));
    case ModelKind::kAngleShift: {
      if (m != 2) throw std::invalid_argument("bundle_law: AngleShift requires m = 2");
      const PolarPoint p = to_polar(u);
      const auto [a, b] = angle_shift_interval(p.angles[0], model.delta);
      return BundleLaw(ArcLaw(p.radius, a, b));
    }
  }
  throw std::logic_error("bundle_law: unknown model");
}

BundleLaw point_law(const Atom& atom) { return BundleLaw(UniformSum(sum(atom.unit), {})); }

std::vector<LawAtom> bundle_laws(const SmoothedDistribution& dist) {
  std::vector<LawAtom> out;
  out.reserve(dist.base.size() + 1);
  for (const Atom& a : dist.base.atoms()) out.push_back({bundle_law(dist.model, a), a.ln_scale, a.ln_prob});
  const double residual = dist.base.residual();
  if (residual > 0.0) {
    const std::size_t m = dist.base.items();
    UniformSum origin(0.0, {});
    if (dist.model.kind == ModelKind::kAdditiveNoise) {
      origin = UniformSum(0.0, Vector(m, dist.model.delta * dist.model.v_max));
    }
    out.push_back({BundleLaw(origin), 0.0, std::log(residual)});
  }
  return out;
}

std::vector<LawAtom> bundle_laws(const DiscreteDistribution& dist) {
  std::vector<LawAtom> out;
  out.reserve(dist.size());
  for (const Atom& a : dist.atoms()) out.push_back({point_law(a), a.ln_scale, a.ln_prob});
  return out;
}

}  // namespace smoothed
