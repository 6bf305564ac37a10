#include "smoothed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "smoothed/bundle_law.hpp"

namespace smoothed {

BoundSpec theorem_constant(ModelKind kind, std::size_t buyers, std::size_t items, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("theorem_constant: delta must be positive");
  if (buyers < 1 || items < 2) throw UnsupportedBoundError("theorem_constant: needs at least one buyer and two items");
  constexpr double pi = std::numbers::pi;
  BoundSpec b{kind, buyers, items, delta, 0.0, {}};
  const double g = std::pow(1.0 + delta, 3) * std::log1p(delta) / (delta * delta);
  switch (kind) {
    case ModelKind::kRectangleShift:
      throw UnsupportedBoundError("theorem_constant: no finite constant exists for RectangleShift");
    case ModelKind::kAdditiveNoise:
      throw UnsupportedBoundError("theorem_constant: AdditiveNoise has no constant-factor bound");
    case ModelKind::kAngleShift:
      if (buyers != 1 || items != 2) {
        throw UnsupportedBoundError("theorem_constant: AngleShift is covered for one buyer and two items only");
      }
      b.constant = pi / (2.0 * delta);
      b.theorem = "angle-single-buyer-two-items";
      return b;
    case ModelKind::kSquareShift:
      break;
  }
  if (items == 2) {
    b.constant = (buyers == 1 ? std::numbers::sqrt2 * pi : 9.0 * std::numbers::sqrt2) * g;
    b.theorem = buyers == 1 ? "square-single-buyer-two-items" : "square-many-buyers-two-items";
    return b;
  }
  const auto m = static_cast<double>(items);
  const double base = std::sqrt(pi * std::numbers::e / 2.0) * (1.0 + delta) / delta;
  b.constant = std::pow(base, m) * (1.0 + delta) * std::log1p(delta) * m * std::sqrt(m);
  if (buyers > 1) b.constant *= 4.0;
  b.theorem = buyers == 1 ? "square-single-buyer-many-items" : "square-many-buyers-many-items";
  return b;
}

RatioReport smoothed_ratio_experiment(const DiscreteDistribution& base, const PerturbationModel& model,
                                      std::size_t k, Rng& rng) {
  RatioReport r;
  r.bound = theorem_constant(model.kind, 1, base.items(), model.delta);
  r.discretization = k;
  const SmoothedDistribution smoothed{base, model};
  require_valid(validate(smoothed));
  const DiscreteDistribution disc = discretize(smoothed, k, rng);
  const MenuLpResult lp = optimal_menu_lp(disc);
  r.types = lp.types;
  r.lp_revenue = lp.report.revenue;
  r.brev = brev_smoothed(smoothed);
  if (r.brev.revenue > 0.0) {
    r.ratio = r.lp_revenue / r.brev.revenue;
  } else {
    r.ratio = r.lp_revenue > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.pass = r.ratio <= r.bound.constant;
  return r;
}

bool DivergenceReport::pass() const {
  if (!increasing || !brev_bounded) return false;
  return std::all_of(rows.begin(), rows.end(), [](const DivergenceRow& r) { return r.ic_pass; });
}

DivergenceReport divergence_report(double delta, const std::vector<std::size_t>& checkpoints) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("divergence_report: delta must lie in (0, 1/2)");
  if (checkpoints.empty()) throw std::invalid_argument("divergence_report: no checkpoints");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.front() < 2) {
    throw std::invalid_argument("divergence_report: checkpoints must be ascending shell counts >= 2");
  }
  DivergenceReport rep;
  rep.delta = delta;
  const PerturbationModel model(ModelKind::kRectangleShift, delta);
  const PointSequence seq = shell_points(delta, checkpoints.back());
  const GapSequence gaps = gap_sequence(seq, model);
  const double cap = 4.0 * (1.0 + delta) + 1e-9;

  long double partial = 0.0L;
  std::size_t upto = 0;
  for (std::size_t shells : checkpoints) {
    while (upto < seq.size() && seq.shell_of[upto] <= shells) partial += gaps.gaps[upto++];
    DivergenceRow row;
    row.shells = shells;
    row.points = upto;
    row.partial_sum = static_cast<double>(partial);
    const SmoothedDistribution dist{lottery_distribution(seq, gaps, upto), model};
    row.brev = brev_smoothed(dist).revenue;
    const Menu menu = tailored_menu(seq, gaps, upto);
    const IcCertificate cert = menu_ic_verify(menu, seq, gaps, model, upto);
    row.ic_pass = cert.pass;
    row.min_ic_margin = std::numeric_limits<double>::infinity();
    for (const IcTypeCertificate& t : cert.types) {
      row.min_ic_margin = std::min({row.min_ic_margin, t.lower.margin, t.upper.margin});
    }
    row.ratio = row.brev > 0.0 ? row.partial_sum / row.brev : 0.0;
    if (!rep.rows.empty() && !(row.partial_sum > rep.rows.back().partial_sum)) rep.increasing = false;
    if (row.brev > cap) rep.brev_bounded = false;
    rep.rows.push_back(row);
  }
  return rep;
}

bool AdditiveNoiseReport::pass() const {
  return support_ok && brev_at_least_delta && welfare_within_bound && prices_within_brev;
}

AdditiveNoiseReport additive_noise_check(const SmoothedDistribution& dist) {
  if (dist.model.kind != ModelKind::kAdditiveNoise || dist.model.v_max != 1.0) {
    throw std::invalid_argument("additive_noise_check: needs AdditiveNoise with v_max = 1");
  }
  AdditiveNoiseReport rep;
  rep.delta = dist.model.delta;
  const auto& atoms = dist.base.atoms();
  double top_bundle = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Vector v = atoms[i].value();
    const double mx = max_coord(v);
    if (mx > 1.0 + 1e-12 && rep.support_ok) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "atom %zu has coordinate %.6g outside [0, 1]", i, mx);
      rep.support_ok = false;
      rep.support_message = buf;
    }
    top_bundle = std::max(top_bundle, sum(v));
  }
  const double m = static_cast<double>(dist.base.items());
  top_bundle += m * rep.delta;

  rep.brev = brev_smoothed(dist).revenue;
  rep.brev_at_least_delta = rep.brev >= rep.delta;
  rep.welfare = expected_welfare(dist);
  rep.welfare_bound_applies = rep.brev > 0.0 && rep.brev <= 2.0;
  if (rep.welfare_bound_applies) {
    rep.welfare_bound = rep.brev * (1.0 + std::log(2.0 / rep.brev));
    rep.welfare_within_bound = rep.welfare <= rep.welfare_bound * (1.0 + 1e-12);
  } else {
    rep.welfare_within_bound = true;
  }
  rep.worst_price_ratio = 0.0;
  if (rep.brev > 0.0) {
    constexpr int kGrid = 100;
    const double lo = rep.brev;
    const double hi = std::max(lo, top_bundle);
    for (int k = 0; k < kGrid; ++k) {
      const double x = lo + (hi - lo) * static_cast<double>(k) / (kGrid - 1);
      rep.worst_price_ratio = std::max(rep.worst_price_ratio, x * bundle_tail(dist, x) / rep.brev);
    }
  }
  rep.prices_within_brev = rep.worst_price_ratio <= 1.0 + 1e-9;
  return rep;
}

DiscreteDistribution random_base(std::size_t atoms, std::size_t m, Rng& rng, double scale) {
  DiscreteDistribution d(m);
  Vector w(atoms);
  double total = 0.0;
  for (double& x : w) total += (x = rng.uniform(0.1, 1.0));
  for (std::size_t a = 0; a < atoms; ++a) {
    Vector v(m);
    for (double& x : v) x = rng.uniform(0.0, scale);
    d.add(std::move(v), w[a] / total);
  }
  return d;
}

JointDiscreteDistribution random_joint(std::size_t buyers, std::size_t support, Rng& rng) {
  if (support < 1 || support > 10) throw std::invalid_argument("random_joint: support must lie in [1, 10]");
  std::vector<Vector> values(buyers);
  for (Vector& vals : values) {
    Vector pool{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    for (std::size_t k = 0; k < support; ++k) {
      const std::size_t pick = k + rng.below(pool.size() - k);
      std::swap(pool[k], pool[pick]);
      vals.push_back(pool[k]);
    }
    std::sort(vals.begin(), vals.end());
  }
  std::size_t count = 1;
  for (std::size_t b = 0; b < buyers; ++b) count *= support;
  Vector w(count);
  double total = 0.0;
  for (double& x : w) total += (x = rng.uniform(0.05, 1.0));
  JointDiscreteDistribution joint(buyers, 1);
  for (std::size_t c = 0; c < count; ++c) {
    Profile p;
    std::size_t rest = c;
    p.values.resize(buyers);
    for (std::size_t b = buyers; b-- > 0;) {
      p.values[b] = {values[b][rest % support]};
      rest /= support;
    }
    p.prob = w[c] / total;
    joint.add(std::move(p));
  }
  return joint;
}

DiscreteDistribution lottery_base(std::size_t types) {
  const PerturbationModel model(ModelKind::kRectangleShift, 0.1);
  std::size_t shells = 2;
  PointSequence seq = shell_points(0.1, shells);
  while (seq.size() < types) seq = shell_points(0.1, shells *= 2);
  return lottery_distribution(seq, gap_sequence(seq, model), types);
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_bool(bool pass) { return pass ? "PASS" : "FAIL"; }

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += csv_cell(cells[k]);
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
  return out;
}

}  // namespace smoothed
