#include "smoothed/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smoothed {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kZeta32 = 2.612375348685488;

ShellNormalizer compute_normalizer() {
  constexpr std::size_t kCutoff = 10'000'000;
  long double acc = 0.0L;
  // smallest terms first
  for (std::size_t k = kCutoff; k >= 2; --k) {
    const long double lk = std::log(static_cast<long double>(k));
    acc += 1.0L / (static_cast<long double>(k) * lk * lk);
  }
  ShellNormalizer n;
  n.cutoff = kCutoff;
  n.low = static_cast<double>(acc + 1.0L / std::log(static_cast<long double>(kCutoff + 1)));
  n.high = static_cast<double>(acc + 1.0L / std::log(static_cast<long double>(kCutoff)));
  return n;
}

Vector on_circle(double radius, double angle) {
  if (angle == kHalfPi) return {0.0, radius};
  if (angle == 0.0) return {radius, 0.0};
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

const ShellNormalizer& shell_normalizer() {
  static const ShellNormalizer n = compute_normalizer();
  return n;
}

double shell_weight(std::size_t k) {
  const double lk = std::log(static_cast<double>(k));
  return 1.0 / (static_cast<double>(k) * lk * lk);
}

PointSequence shell_points(double delta, std::size_t max_shell) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("shell_points: delta must lie in (0, 1/2)");
  if (max_shell < 2) throw std::invalid_argument("shell_points: max_shell must be >= 2");
  const double alpha = shell_normalizer().high;
  const double ratio = 1.0 - 3.0 * delta;
  PointSequence seq;
  seq.delta = delta;
  seq.first_shell = 2;
  long double partial = 0.0L;
  for (std::size_t shell = 2; shell <= max_shell; ++shell) {
    const double c = shell_weight(shell);
    partial += c;
    const double radius = static_cast<double>(partial / alpha);
    seq.shell_radii.push_back(radius);
    const double stop = std::sqrt(c);
    double angle = kHalfPi;
    for (std::size_t k = 0; angle >= stop; ++k) {
      seq.points.push_back(on_circle(radius, angle));
      seq.angles.push_back(angle);
      seq.shell_of.push_back(shell);
      angle = kHalfPi * std::pow(ratio, static_cast<double>(k + 1));
    }
  }
  return seq;
}

GapSequence gap_sequence(const PointSequence& seq, const PerturbationModel& model) {
  if (model.kind != ModelKind::kRectangleShift && model.kind != ModelKind::kSquareShift) {
    throw NotABoxModelError("gap_sequence: only RectangleShift and SquareShift are supported");
  }
  const std::size_t n = seq.size();
  GapSequence out;
  out.model = model;
  out.gaps.resize(n);
  out.binding.resize(n);
  if (n == 0) return out;
  const std::size_t m = seq.points[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& xi = seq.points[i];
    const AxisBox box = image_region(model, xi);
    // origin: x_i >= 0, so the minimum sits at the low corner
    double best = 0.0;
    for (std::size_t k = 0; k < m; ++k) best += box.lo[k] * xi[k];
    long arg = -1;
    for (std::size_t j = 0; j < i; ++j) {
      const Vector& xj = seq.points[j];
      double v = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double w = xi[k] - xj[k];
        v += w * (w >= 0.0 ? box.lo[k] : box.hi[k]);
      }
      if (v < best) {
        best = v;
        arg = static_cast<long>(j);
      }
    }
    if (!(best > 0.0)) {
      throw GapError("gap_sequence: nonpositive gap " + std::to_string(best) + " at point " + std::to_string(i) +
                         " against " + (arg < 0 ? std::string("the origin") : std::to_string(arg)),
                     i, arg);
    }
    out.gaps[i] = best;
    out.binding[i] = arg;
  }
  return out;
}

Vector lottery_log_multipliers(const Vector& gaps, std::size_t truncate) {
  if (truncate > gaps.size()) throw std::invalid_argument("lottery_log_multipliers: truncate exceeds the sequence");
  Vector out(truncate);
  double ln_prod = 0.0;
  for (std::size_t i = 0; i < truncate; ++i) {
    if (!(gaps[i] > 0.0)) throw std::invalid_argument("lottery_log_multipliers: gaps must be positive");
    out[i] = static_cast<double>(i + 1) * std::log(4.0) - ln_prod;
    ln_prod += std::log(gaps[i]);
  }
  return out;
}

DiscreteDistribution lottery_distribution(const PointSequence& seq, const GapSequence& gaps, std::size_t truncate) {
  if (truncate > seq.size()) throw std::invalid_argument("lottery_distribution: truncate exceeds the sequence");
  const Vector ln_m = lottery_log_multipliers(gaps.gaps, truncate);
  const std::size_t m = seq.size() ? seq.points[0].size() : 2;
  DiscreteDistribution dist(m);
  for (std::size_t i = 0; i < truncate; ++i) dist.add(Atom{seq.points[i], ln_m[i], -ln_m[i]});
  if (dist.ln_mass() > 0.0) throw std::invalid_argument("lottery_distribution: probabilities sum above 1");
  return dist;
}

Menu tailored_menu(const PointSequence& seq, const GapSequence& gaps, std::size_t truncate) {
  if (truncate > seq.size()) throw std::invalid_argument("tailored_menu: truncate exceeds the sequence");
  const Vector ln_m = lottery_log_multipliers(gaps.gaps, truncate);
  Menu menu(seq.size() ? seq.points[0].size() : 2);
  for (std::size_t i = 0; i < truncate; ++i) {
    menu.add(seq.points[i], LogScaled::from_log(ln_m[i] + std::log(gaps.gaps[i])));
  }
  return menu;
}

std::size_t spread_shell_size(std::size_t shell) {
  // ceil(N^{3/4}) = smallest s with s^4 >= N^3
  auto s = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(shell), 0.75)));
  const auto cube = static_cast<long double>(shell) * shell * shell;
  auto fourth = [](std::size_t v) {
    const auto x = static_cast<long double>(v);
    return x * x * x * x;
  };
  while (s > 1 && fourth(s - 1) >= cube) --s;
  while (fourth(s) < cube) ++s;
  return s;
}

SpreadPoints hn67_points(std::size_t count) {
  if (count == 0) throw std::invalid_argument("hn67_points: count must be >= 1");
  SpreadPoints out;
  PointSequence& seq = out.sequence;
  seq.first_shell = 1;
  long double partial = 0.0L;
  for (std::size_t shell = 1; seq.size() < count; ++shell) {
    partial += 1.0L / std::pow(static_cast<long double>(shell), 1.5L);
    const double radius = static_cast<double>(partial / kZeta32);
    seq.shell_radii.push_back(radius);
    const std::size_t s = spread_shell_size(shell);
    for (std::size_t k = 0; k < s && seq.size() < count; ++k) {
      const double angle =
          s == 1 ? kHalfPi / 2.0 : kHalfPi * (1.0 - static_cast<double>(k) / static_cast<double>(s - 1));
      seq.points.push_back(on_circle(radius, angle));
      seq.angles.push_back(angle);
      seq.shell_of.push_back(shell);
    }
  }
  out.gaps.resize(count);
  out.constant = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    const Vector& q = seq.points[k];
    const double self = q[0] * q[0] + q[1] * q[1];
    double top = 0.0;
    for (std::size_t j = 0; j < k; ++j) top = std::max(top, q[0] * seq.points[j][0] + q[1] * seq.points[j][1]);
    out.gaps[k] = self - top;
    out.constant = std::min(out.constant, out.gaps[k] * std::pow(static_cast<double>(k + 1), 6.0 / 7.0));
  }
  return out;
}

SubsetConstruction subset_construction(std::size_t m, std::size_t j_max, double delta) {
  if (m % 2 != 0 || m < 4 || m > 12) throw std::invalid_argument("subset_construction: m must be even in [4, 12]");
  if (!(delta > 0.0)) throw std::invalid_argument("subset_construction: delta must be positive");
  SubsetConstruction out;
  const std::size_t half = m / 2;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != half) continue;
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < m; ++k) {
      if (mask & (1u << k)) s.push_back(k);
    }
    out.subsets.push_back(std::move(s));
  }
  std::sort(out.subsets.begin(), out.subsets.end());
  if (j_max < 1 || j_max > out.subsets.size()) {
    throw std::invalid_argument("subset_construction: j_max must lie in [1, " + std::to_string(out.subsets.size()) + "]");
  }
  out.subsets.resize(j_max);
  const double ln_m = std::log(static_cast<double>(m));
  Vector terms;
  for (std::size_t j = 1; j <= j_max; ++j) terms.push_back(-2.0 * static_cast<double>(j) * ln_m);
  out.ln_normalizer = log_sum_exp(terms);
  out.distribution = DiscreteDistribution(m);
  out.menu = Menu(m);
  for (std::size_t j = 1; j <= j_max; ++j) {
    Vector ind(m, 0.0);
    for (std::size_t k : out.subsets[j - 1]) ind[k] = 1.0;
    const double lj = 2.0 * static_cast<double>(j) * ln_m;
    out.distribution.add(Atom{ind, std::log(2.0) + lj, -lj - out.ln_normalizer});
    out.menu.add(ind, LogScaled::from_log(lj));
  }
  out.model = PerturbationModel(ModelKind::kSquareShift, delta);
  return out;
}

SmoothedDistribution additive_scaled_distribution(std::size_t n, double delta) {
  if (n < 1) throw std::invalid_argument("additive_scaled_distribution: n must be >= 1");
  if (!(delta > 0.0 && delta < 0.25)) throw std::invalid_argument("additive_scaled_distribution: delta must lie in (0, 1/4)");
  const SpreadPoints spread = hn67_points(n);
  const double ln4 = std::log(4.0);
  DiscreteDistribution base(2);
  double ln_prod = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    ln_prod += std::log(spread.gaps[k]);
    const double ln_mk = static_cast<double>(k + 1) * ln4 - ln_prod;
    base.add(Atom{spread.sequence.points[k], ln_mk - static_cast<double>(n + 1) * ln4, -ln_mk});
  }
  return SmoothedDistribution{std::move(base), PerturbationModel(ModelKind::kAdditiveNoise, delta, 1.0)};
}

}  // namespace smoothed
