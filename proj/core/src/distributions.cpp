#include "smoothed/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "smoothed/bundle_law.hpp"

namespace smoothed {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr std::size_t kChunk = 4096;

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

Vector draw_noise(const PerturbationModel& model, std::size_t m, Rng& rng) {
  Vector noise(model.noise_length(m));
  if (model.kind == ModelKind::kAngleShift) {
    noise[0] = rng.uniform(-1.0, 1.0);
  } else {
    for (double& u : noise) u = rng.uniform01();
  }
  return noise;
}

Vector perturb(const PerturbationModel& model, const Vector& v, Rng& rng) {
  return apply(model, v, draw_noise(model, v.size(), rng));
}

}  // namespace

Atom Atom::plain(Vector value, double prob) {
  if (!(prob > 0.0)) throw std::invalid_argument("Atom: probability must be positive");
  return Atom{std::move(value), 0.0, std::log(prob)};
}

Vector Atom::value() const {
  Vector v = unit;
  if (ln_scale != 0.0) {
    const double s = scale();
    for (double& x : v) x *= s;
  }
  return v;
}

LogScaled Atom::bundle_value() const {
  return LogScaled::from_log(ln_scale) * LogScaled::from_linear(sum(unit));
}

DiscreteDistribution::DiscreteDistribution(std::size_t m, std::vector<Atom> atoms)
    : m_(m), atoms_(std::move(atoms)) {}

double DiscreteDistribution::ln_mass() const {
  Vector lp;
  lp.reserve(atoms_.size());
  for (const Atom& a : atoms_) lp.push_back(a.ln_prob);
  return log_sum_exp(lp);
}

double DiscreteDistribution::residual() const { return std::max(0.0, -std::expm1(ln_mass())); }

bool DiscreteDistribution::is_plain() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.ln_scale == 0.0; });
}

JointDiscreteDistribution::JointDiscreteDistribution(std::size_t n, std::size_t m,
                                                     std::vector<Profile> profiles)
    : n_(n), m_(m), profiles_(std::move(profiles)) {}

ValidationReport validate(const DiscreteDistribution& dist) {
  if (dist.items() == 0) return Violation{"item count m must be >= 1", std::nullopt};
  const auto& atoms = dist.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (a.unit.size() != dist.items()) {
      return Violation{"atom " + std::to_string(i) + " has " + std::to_string(a.unit.size()) +
                           " coordinates, expected " + std::to_string(dist.items()),
                       i};
    }
    for (std::size_t j = 0; j < a.unit.size(); ++j) {
      if (!(a.unit[j] >= 0.0) || !std::isfinite(a.unit[j])) {
        return Violation{"atom " + std::to_string(i) + " has negative or non-finite value at item " +
                             std::to_string(j),
                         i};
      }
    }
    if (!std::isfinite(a.ln_scale)) return Violation{"atom " + std::to_string(i) + " has non-finite scale", i};
    if (!(a.ln_prob <= 0.0) || !std::isfinite(a.ln_prob)) {
      return Violation{"atom " + std::to_string(i) + " probability outside (0, 1]", i};
    }
  }
  const double ln_mass = dist.ln_mass();
  if (ln_mass > std::log1p(kMassTolerance)) {
    return Violation{"mass " + fmt_double(std::exp(ln_mass)) + " > 1", std::nullopt};
  }
  return std::nullopt;
}

ValidationReport validate(const JointDiscreteDistribution& dist) {
  if (dist.buyers() == 0 || dist.items() == 0) return Violation{"n and m must be >= 1", std::nullopt};
  double mass = 0.0;
  const auto& ps = dist.profiles();
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const Profile& p = ps[k];
    if (p.values.size() != dist.buyers()) {
      return Violation{"profile " + std::to_string(k) + " has wrong buyer count", k};
    }
    for (const Vector& row : p.values) {
      if (row.size() != dist.items()) return Violation{"profile " + std::to_string(k) + " has wrong item count", k};
      for (double x : row) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
          return Violation{"profile " + std::to_string(k) + " has a negative or non-finite value", k};
        }
      }
    }
    if (!(p.prob > 0.0) || p.prob > 1.0) return Violation{"profile " + std::to_string(k) + " probability outside (0, 1]", k};
    mass += p.prob;
  }
  if (std::abs(mass - 1.0) > kMassTolerance * std::max<double>(1.0, static_cast<double>(ps.size()))) {
    return Violation{"profile probabilities sum to " + fmt_double(mass) + ", not 1", std::nullopt};
  }
  return std::nullopt;
}

namespace {

ValidationReport validate_model(const PerturbationModel& model, std::size_t m) {
  if (model.kind == ModelKind::kAngleShift && m != 2) {
    return Violation{"AngleShift requires m = 2", std::nullopt};
  }
  return std::nullopt;
}

bool inside_additive_support(const Vector& v, double v_max) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x <= v_max * (1.0 + kMassTolerance); });
}

}  // namespace

ValidationReport validate(const SmoothedDistribution& dist) {
  if (auto r = validate(dist.base)) return r;
  if (auto r = validate_model(dist.model, dist.base.items())) return r;
  if (dist.model.kind == ModelKind::kAdditiveNoise) {
    const auto& atoms = dist.base.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (!inside_additive_support(atoms[i].value(), dist.model.v_max)) {
        return Violation{"atom " + std::to_string(i) + " lies outside [0, v_max]^m", i};
      }
    }
  }
  return std::nullopt;
}

ValidationReport validate(const SmoothedJointDistribution& dist) {
  if (auto r = validate(dist.base)) return r;
  if (auto r = validate_model(dist.model, dist.base.items())) return r;
  if (dist.model.kind == ModelKind::kAdditiveNoise) {
    const auto& ps = dist.base.profiles();
    for (std::size_t k = 0; k < ps.size(); ++k) {
      for (const Vector& row : ps[k].values) {
        if (!inside_additive_support(row, dist.model.v_max)) {
          return Violation{"profile " + std::to_string(k) + " lies outside [0, v_max]^m", k};
        }
      }
    }
  }
  return std::nullopt;
}

void require_valid(const ValidationReport& report) {
  if (report) throw std::invalid_argument("invalid distribution: " + report->message);
}

std::optional<std::size_t> sample_atom(const DiscreteDistribution& dist, Rng& rng) {
  const double u = rng.uniform01();
  double cum = 0.0;
  const auto& atoms = dist.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    cum += atoms[i].prob();
    if (u < cum) return i;
  }
  return std::nullopt;
}

Vector sample(const SmoothedDistribution& dist, Rng& rng) {
  const auto idx = sample_atom(dist.base, rng);
  const Vector v = idx ? dist.base.atoms()[*idx].value() : Vector(dist.base.items(), 0.0);
  return perturb(dist.model, v, rng);
}

std::vector<Vector> sample(const SmoothedJointDistribution& dist, Rng& rng) {
  const double u = rng.uniform01();
  const auto& ps = dist.base.profiles();
  std::size_t pick = ps.size() - 1;
  double cum = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    cum += ps[k].prob;
    if (u < cum) {
      pick = k;
      break;
    }
  }
  std::vector<Vector> out;
  out.reserve(dist.base.buyers());
  for (const Vector& row : ps[pick].values) out.push_back(perturb(dist.model, row, rng));
  return out;
}

double bundle_tail(const SmoothedDistribution& dist, double p) {
  if (p <= 0.0) return 1.0;
  double acc = 0.0;
  for (const LawAtom& c : bundle_laws(dist)) {
    const double t = c.law.tail(p * std::exp(-c.ln_scale));
    if (t > 0.0) acc += std::exp(c.ln_prob) * t;
  }
  return std::clamp(acc, 0.0, 1.0);
}

double bundle_tail(const DiscreteDistribution& dist, double p) {
  if (p <= 0.0) return 1.0;
  double acc = 0.0;
  const LogScaled price = p > 0.0 ? LogScaled::from_linear(p) : LogScaled::zero();
  for (const Atom& a : dist.atoms()) {
    if (a.bundle_value() >= price) acc += a.prob();
  }
  return std::clamp(acc, 0.0, 1.0);
}

Estimate bundle_tail_mc(const SmoothedDistribution& dist, double p, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("bundle_tail_mc: need at least one sample");
  const std::uint64_t base = rng.next_u64();
  std::size_t hits = 0;
  for (std::size_t c = 0, done = 0; done < samples; ++c) {
    Rng sub(derive_seed(base, c));
    const std::size_t n = std::min(kChunk, samples - done);
    for (std::size_t s = 0; s < n; ++s) {
      if (sum(sample(dist, sub)) >= p) ++hits;
    }
    done += n;
  }
  Estimate e;
  e.samples = samples;
  e.value = static_cast<double>(hits) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(samples));
  return e;
}

DiscreteDistribution discretize(const SmoothedDistribution& dist, std::size_t k, Rng& rng) {
  if (k == 0) throw std::invalid_argument("discretize: k must be >= 1");
  const std::uint64_t base = rng.next_u64();
  std::map<Vector, std::size_t> index;
  std::vector<std::pair<Vector, std::size_t>> draws;
  for (std::size_t c = 0, done = 0; done < k; ++c) {
    Rng sub(derive_seed(base, c));
    const std::size_t n = std::min(kChunk, k - done);
    for (std::size_t s = 0; s < n; ++s) {
      Vector v = sample(dist, sub);
      auto [it, fresh] = index.try_emplace(v, draws.size());
      if (fresh) {
        draws.emplace_back(std::move(v), 1);
      } else {
        ++draws[it->second].second;
      }
    }
    done += n;
  }
  DiscreteDistribution out(dist.base.items());
  for (auto& [v, count] : draws) {
    out.add(std::move(v), static_cast<double>(count) / static_cast<double>(k));
  }
  return out;
}

double expected_welfare(const DiscreteDistribution& dist) {
  double acc = 0.0;
  for (const Atom& a : dist.atoms()) {
    const double s = sum(a.unit);
    if (s > 0.0) acc += std::exp(a.ln_prob + a.ln_scale + std::log(s));
  }
  return acc;
}

double expected_welfare(const SmoothedDistribution& dist) {
  double acc = 0.0;
  for (const LawAtom& c : bundle_laws(dist)) {
    const double mean = c.law.mean();
    if (mean > 0.0) acc += std::exp(c.ln_prob + c.ln_scale + std::log(mean));
  }
  return acc;
}

double expected_welfare(const JointDiscreteDistribution& dist) {
  double acc = 0.0;
  for (const Profile& p : dist.profiles()) {
    for (const Vector& row : p.values) acc += p.prob * sum(row);
  }
  return acc;
}

}  // namespace smoothed
