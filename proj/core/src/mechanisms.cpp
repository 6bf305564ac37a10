#include "smoothed/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "smoothed/bundle_law.hpp"

namespace smoothed {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieRel = 1e-12;
constexpr std::size_t kChunk = 4096;

// Noise applied in an atom's unit frame; only AdditiveNoise is not
// scale-equivariant and needs its width rescaled.
PerturbationModel frame_model(const PerturbationModel& model, double ln_scale) {
  if (model.kind != ModelKind::kAdditiveNoise) return model;
  return PerturbationModel(model.kind, model.delta, model.v_max * std::exp(-ln_scale));
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

double min_dot_diff(const AxisBox& box, const Vector& a, const Vector& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double w = a[k] - b[k];
    acc += w * (w >= 0.0 ? box.lo[k] : box.hi[k]);
  }
  return acc;
}

unsigned long long min_corner(const Vector& w) {
  unsigned long long mask = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] < 0.0) mask |= 1ULL << k;
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Bundle pricing over a mixture of one-dimensional laws.
//
// Component a has bundle value exp(s_a) Y_a, Y_a ~ law_a, with probability
// exp(lp_a). Prices are handled as ln p throughout. At a price, components
// whose support lies entirely above it contribute their full mass (suffix
// log-sum over components sorted by ln lower end); only components whose
// support straddles the price need their tail evaluated.

struct Component {
  const BundleLaw* law;
  double s;
  double lp;
  double ln_lo;
  double ln_hi;
};

class PricingCurve {
 public:
  explicit PricingCurve(const std::vector<LawAtom>& atoms) {
    for (const LawAtom& a : atoms) {
      const double hi = a.law.hi();
      if (!(hi > 0.0) || a.ln_prob == kNegInf) continue;
      const double lo = a.law.lo();
      comps_.push_back({&a.law, a.ln_scale, a.ln_prob, lo > 0.0 ? a.ln_scale + std::log(lo) : kNegInf,
                        a.ln_scale + std::log(hi)});
    }
    std::sort(comps_.begin(), comps_.end(),
              [](const Component& x, const Component& y) { return x.ln_lo < y.ln_lo; });
    suffix_.assign(comps_.size() + 1, kNegInf);
    for (std::size_t k = comps_.size(); k-- > 0;) suffix_[k] = log_add(suffix_[k + 1], comps_[k].lp);
    ln_lo_.reserve(comps_.size());
    for (const Component& c : comps_) {
      ln_lo_.push_back(c.ln_lo);
      if (c.ln_lo == kNegInf) {
        unbounded_below_.push_back(&c - comps_.data());
      } else {
        max_span_ = std::max(max_span_, c.ln_hi - c.ln_lo);
      }
    }
  }

  bool empty() const { return comps_.empty(); }

  // ln of all breakpoints, sorted and distinct.
  Vector breakpoints() const {
    Vector out;
    for (const Component& c : comps_) {
      for (double b : c.law->breakpoints()) {
        if (b > 0.0) out.push_back(c.s + std::log(b));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Components strictly straddling ln price lam, i.e. ln_lo < lam < ln_hi.
  template <class F>
  void for_straddling(double lam, F&& f) const {
    for (std::size_t idx : unbounded_below_) {
      if (comps_[idx].ln_hi > lam) f(comps_[idx]);
    }
    const auto first = std::upper_bound(ln_lo_.begin(), ln_lo_.end(), lam - max_span_);
    const auto last = std::lower_bound(ln_lo_.begin(), ln_lo_.end(), lam);
    for (auto it = first; it < last; ++it) {
      const Component& c = comps_[static_cast<std::size_t>(it - ln_lo_.begin())];
      if (c.ln_lo != kNegInf && c.ln_hi > lam) f(c);
    }
  }

  // ln Pr[bundle >= exp(lam)].
  double ln_tail(double lam) const {
    const auto k0 = static_cast<std::size_t>(std::lower_bound(ln_lo_.begin(), ln_lo_.end(), lam) - ln_lo_.begin());
    double acc = suffix_[k0];
    for_straddling(lam, [&](const Component& c) {
      const double t = c.law->tail(std::exp(lam - c.s));
      if (t > 0.0) acc = log_add(acc, c.lp + std::log(t));
    });
    return acc;
  }

  double revenue(double lam) const {
    const double lt = ln_tail(lam);
    return lt == kNegInf ? 0.0 : std::exp(lam + lt);
  }

  // Sign of d/dp [p Pr[bundle >= p]] at p = exp(lam), computed as
  // full mass + sum_a prob_a (T_a(y) - y f_a(y)), weights relative to the
  // largest so tiny probabilities do not underflow together.
  double slope_sign(double lam) const {
    const auto k0 = static_cast<std::size_t>(std::lower_bound(ln_lo_.begin(), ln_lo_.end(), lam) - ln_lo_.begin());
    double top = suffix_[k0];
    for_straddling(lam, [&](const Component& c) { top = std::max(top, c.lp); });
    if (top == kNegInf) return 0.0;
    double acc = std::exp(suffix_[k0] - top);
    for_straddling(lam, [&](const Component& c) {
      const double y = std::exp(lam - c.s);
      acc += std::exp(c.lp - top) * (c.law->tail(y) - y * c.law->density(y));
    });
    return acc;
  }

  bool unbounded_below() const { return !unbounded_below_.empty(); }

  bool has_straddlers(double lam) const {
    bool any = false;
    for_straddling(lam, [&](const Component&) { any = true; });
    return any;
  }

 private:
  std::vector<Component> comps_;
  Vector ln_lo_;
  Vector suffix_;
  std::vector<std::size_t> unbounded_below_;
  double max_span_ = 0.0;
};

struct PriceChoice {
  double lam = kNegInf;
  double revenue = 0.0;
};

// Keeps the best revenue, preferring the lower price on ties.
void offer(PriceChoice& best, double lam, double revenue) {
  const double scale = std::max(best.revenue, revenue);
  if (revenue > best.revenue + kTieRel * scale ||
      (revenue >= best.revenue - kTieRel * scale && lam < best.lam && revenue > 0.0)) {
    best.lam = lam;
    best.revenue = revenue;
  }
}

PriceChoice optimal_price(const std::vector<LawAtom>& atoms, std::size_t probes) {
  PricingCurve curve(atoms);
  PriceChoice best;
  if (curve.empty()) return best;
  Vector bps = curve.breakpoints();
  // laws reaching down to 0 have a last piece below the first breakpoint;
  // revenue there is at most the price, so 60 e-folds down is far enough
  if (curve.unbounded_below() && !bps.empty()) bps.insert(bps.begin(), bps.front() - 60.0);
  Vector rev_at(bps.size());
  for (std::size_t k = 0; k < bps.size(); ++k) {
    rev_at[k] = curve.revenue(bps[k]);
    offer(best, bps[k], rev_at[k]);
  }
  probes = std::max<std::size_t>(probes, 2);
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const double l = bps[k];
    const double r = bps[k + 1];
    // revenue on (l, r) is at most exp(r) * Pr[bundle >= exp(l)]
    if (rev_at[k] * std::exp(r - l) <= best.revenue * (1.0 + kTieRel)) continue;
    const double mid = 0.5 * (l + r);
    if (!curve.has_straddlers(mid)) continue;
    double prev_lam = l;
    double prev_sign = curve.slope_sign(l + (r - l) * 1e-12);
    for (std::size_t t = 1; t <= probes; ++t) {
      const double lam = t == probes ? r - (r - l) * 1e-12 : l + (r - l) * static_cast<double>(t) / static_cast<double>(probes);
      const double sign = curve.slope_sign(lam);
      offer(best, lam, curve.revenue(lam));
      if (prev_sign > 0.0 && sign <= 0.0) {
        double a = prev_lam;
        double b = lam;
        for (int it = 0; it < 80 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
          const double c = 0.5 * (a + b);
          if (curve.slope_sign(c) > 0.0) {
            a = c;
          } else {
            b = c;
          }
        }
        offer(best, a, curve.revenue(a));
        offer(best, b, curve.revenue(b));
      }
      prev_lam = lam;
      prev_sign = sign;
    }
  }
  return best;
}

RevenueReport report_from(const PriceChoice& c) {
  RevenueReport r;
  r.revenue = c.revenue;
  r.price = c.revenue > 0.0 ? LogScaled::from_log(c.lam) : LogScaled::zero();
  return r;
}

}  // namespace

std::string to_string(Method m) { return m == Method::kExact ? "exact" : "monte-carlo"; }

RevenueReport menu_revenue_discrete(const Menu& menu, const DiscreteDistribution& dist) {
  Vector terms;
  for (const Atom& a : dist.atoms()) {
    const long k = best_response(menu, a.unit, a.ln_scale);
    if (k == Menu::kNull) continue;
    const LogScaled price = menu[static_cast<std::size_t>(k)].price;
    if (!price.is_zero()) terms.push_back(price.ln() + a.ln_prob);
  }
  RevenueReport r;
  const double ln_rev = log_sum_exp(terms);
  r.revenue = ln_rev == kNegInf ? 0.0 : std::exp(ln_rev);
  return r;
}

RevenueReport menu_revenue_smoothed(const Menu& menu, const SmoothedDistribution& dist,
                                    std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("menu_revenue_smoothed: need at least one sample");
  const std::size_t m = dist.base.items();
  const std::uint64_t base = rng.next_u64();
  const Atom origin{Vector(m, 0.0), 0.0, 0.0};
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (std::size_t c = 0, done = 0; done < samples; ++c) {
    Rng sub(derive_seed(base, c));
    const std::size_t chunk = std::min(kChunk, samples - done);
    for (std::size_t s = 0; s < chunk; ++s) {
      const auto idx = sample_atom(dist.base, sub);
      const Atom& a = idx ? dist.base.atoms()[*idx] : origin;
      const PerturbationModel model = frame_model(dist.model, a.ln_scale);
      const Vector vhat = apply(model, a.unit, draw_noise(model, m, sub));
      const long k = best_response(menu, vhat, a.ln_scale);
      const double pay = k == Menu::kNull ? 0.0 : menu[static_cast<std::size_t>(k)].price.linear();
      ++n;
      const double d = pay - mean;
      mean += d / static_cast<double>(n);
      m2 += d * (pay - mean);
    }
    done += chunk;
  }
  RevenueReport r;
  r.method = Method::kMonteCarlo;
  r.samples = samples;
  r.revenue = mean;
  r.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  return r;
}

double tailored_revenue(const Menu& menu, const DiscreteDistribution& dist) {
  const std::size_t k = std::min(menu.size(), dist.size());
  Vector terms;
  terms.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!menu[i].price.is_zero()) terms.push_back(menu[i].price.ln() + dist.atoms()[i].ln_prob);
  }
  const double l = log_sum_exp(terms);
  return l == kNegInf ? 0.0 : std::exp(l);
}

IcCertificate menu_ic_verify(const Menu& menu, const PointSequence& seq, const GapSequence& gaps,
                             const PerturbationModel& model, std::size_t truncate, double tolerance) {
  if (model.kind != ModelKind::kRectangleShift && model.kind != ModelKind::kSquareShift) {
    throw NotABoxModelError("menu_ic_verify: only RectangleShift and SquareShift are supported");
  }
  if (gaps.gaps.size() != seq.size()) throw DimensionError("menu_ic_verify: gaps do not match the sequence");
  const std::size_t n = std::min({truncate, menu.size(), gaps.gaps.size()});
  IcCertificate cert;
  cert.tolerance = tolerance;
  cert.types.resize(n);
  if (n == 0) return cert;

  std::vector<const Vector*> x(n);
  Vector ln_price(n);
  double max_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = &menu[i].allocation;
    ln_price[i] = menu[i].price.ln();
    max_norm = std::max(max_norm, norm2(*x[i]));
  }
  Vector suffix_min(n + 1, std::numeric_limits<double>::infinity());
  for (std::size_t i = n; i-- > 0;) suffix_min[i] = std::min(suffix_min[i + 1], ln_price[i]);

  const Vector zero(menu.items(), 0.0);
  auto fail = [&](std::size_t i, long j, unsigned long long corner) {
    if (!cert.first_failure) cert.first_failure = IcFailure{i, j, corner};
    cert.pass = false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const AxisBox box = image_region(model, *x[i]);
    const double gap = gaps.gaps[i];
    IcTypeCertificate& tc = cert.types[i];

    for (long j = -1; j < static_cast<long>(i); ++j) {
      const Vector& xj = j < 0 ? zero : *x[static_cast<std::size_t>(j)];
      const double margin = (min_dot_diff(box, *x[i], xj) - gap) / gap;
      ++cert.pairs_checked;
      if (margin < tc.lower.margin) tc.lower = {margin, j};
      if (margin < -tolerance) {
        Vector w(xj.size());
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = (*x[i])[k] - xj[k];
        fail(i, j, min_corner(w));
      }
    }

    const double ln_m = ln_price[i] - std::log(gap);
    const double ln_bound = std::log(norm2(box.hi) * max_norm);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (suffix_min[j] - ln_m >= ln_bound) {
        cert.pairs_bounded += n - j;
        break;
      }
      const double ratio = std::exp(ln_price[j] - ln_m);
      const double top = box_max_dot(box, *x[j]);
      const double denom = std::max(ratio, top);
      const double margin = denom > 0.0 ? (ratio - top) / denom : 0.0;
      ++cert.pairs_checked;
      if (margin < tc.upper.margin) tc.upper = {margin, static_cast<long>(j)};
      if (margin < -tolerance) {
        unsigned long long mask = 0;
        for (std::size_t k = 0; k < x[j]->size(); ++k) {
          if ((*x[j])[k] > 0.0) mask |= 1ULL << k;
        }
        fail(i, static_cast<long>(j), mask);
      }
    }
  }
  return cert;
}

CornerIcReport menu_corner_ic(const Menu& menu, const DiscreteDistribution& dist,
                              const PerturbationModel& model, const std::vector<long>& assignment) {
  if (!model.is_box_model()) throw NotABoxModelError("menu_corner_ic: needs a box model");
  if (assignment.size() != dist.size()) throw DimensionError("menu_corner_ic: one entry per atom expected");
  const std::size_t m = dist.items();
  if (m > 20) throw std::invalid_argument("menu_corner_ic: too many corners");
  CornerIcReport rep;
  const auto& atoms = dist.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    const AxisBox box = image_region(frame_model(model, a.ln_scale), a.unit);
    const long own = assignment[i];
    for (unsigned long long c = 0; c < (1ULL << m); ++c) {
      const Vector xh = box.corner(c);
      auto util = [&](long k) {
        if (k == Menu::kNull) return 0.0;
        const MenuEntry& e = menu[static_cast<std::size_t>(k)];
        return dot(xh, e.allocation) - std::exp(e.price.ln() - a.ln_scale);
      };
      const double mine = util(own);
      for (long k = -1; k < static_cast<long>(menu.size()); ++k) {
        if (k == own) continue;
        const double margin = mine - util(k);
        if (margin < rep.min_margin) rep.min_margin = margin;
        if (!(margin > 0.0)) {
          rep.pass = false;
          if (!rep.first_failure) rep.first_failure = IcFailure{i, k, c};
        }
      }
    }
  }
  return rep;
}

RevenueReport brev_discrete(const DiscreteDistribution& dist) {
  return report_from(optimal_price(bundle_laws(dist), 2));
}

RevenueReport brev_smoothed(const SmoothedDistribution& dist, const BrevOptions& options) {
  const std::size_t m = dist.base.items();
  if (dist.model.is_box_model() && m > UniformSum::kMaxTerms) {
    Rng rng(options.mc_seed);
    const std::uint64_t base = rng.next_u64();
    Vector values;
    values.reserve(options.mc_samples);
    for (std::size_t c = 0, done = 0; done < options.mc_samples; ++c) {
      Rng sub(derive_seed(base, c));
      const std::size_t chunk = std::min(kChunk, options.mc_samples - done);
      for (std::size_t s = 0; s < chunk; ++s) values.push_back(sum(sample(dist, sub)));
      done += chunk;
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    const auto n = static_cast<double>(values.size());
    RevenueReport r;
    r.method = Method::kMonteCarlo;
    r.samples = values.size();
    double best_q = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double q = static_cast<double>(k + 1) / n;
      const double rev = values[k] * q;
      if (rev > r.revenue * (1.0 + kTieRel)) {
        r.revenue = rev;
        r.price = LogScaled::from_linear(values[k]);
        best_q = q;
      }
    }
    r.std_error = r.price.is_zero() ? 0.0 : r.price.linear() * std::sqrt(best_q * (1.0 - best_q) / n);
    return r;
  }
  return report_from(optimal_price(bundle_laws(dist), options.probes_per_piece));
}

RevenueReport srev_discrete(const DiscreteDistribution& dist) {
  RevenueReport total;
  const std::size_t m = dist.items();
  total.item_prices.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<LawAtom> laws;
    laws.reserve(dist.size());
    for (const Atom& a : dist.atoms()) {
      laws.push_back({BundleLaw(UniformSum(a.unit[j], {})), a.ln_scale, a.ln_prob});
    }
    const PriceChoice c = optimal_price(laws, 2);
    total.revenue += c.revenue;
    total.item_prices[j] = c.revenue > 0.0 ? std::exp(c.lam) : 0.0;
  }
  return total;
}

MenuLpResult optimal_menu_lp(const DiscreteDistribution& dist, std::size_t truncate_types,
                             const MenuLpOptions& options) {
  const std::size_t m = dist.items();
  std::size_t k_atoms = truncate_types == 0 ? dist.size() : std::min(truncate_types, dist.size());
  const auto& atoms = dist.atoms();

  // types: the kept atoms, then the origin if it carries mass
  double kept_mass_ln = kNegInf;
  for (std::size_t i = 0; i < k_atoms; ++i) kept_mass_ln = log_add(kept_mass_ln, atoms[i].ln_prob);
  const double origin_mass = std::max(0.0, -std::expm1(kept_mass_ln));
  const bool with_origin = origin_mass > 1e-15;
  const std::size_t K = k_atoms + (with_origin ? 1 : 0);
  if (K > options.max_types) {
    throw std::length_error("optimal_menu_lp: " + std::to_string(K) + " types exceed the limit of " +
                            std::to_string(options.max_types));
  }

  double ln_top = kNegInf;
  for (std::size_t i = 0; i < k_atoms; ++i) {
    const double mx = max_coord(atoms[i].unit);
    if (mx > 0.0) ln_top = std::max(ln_top, atoms[i].ln_scale + std::log(mx));
  }
  if (ln_top == kNegInf) ln_top = 0.0;

  std::vector<Vector> v(K, Vector(m, 0.0));
  Vector f(K, 0.0);
  for (std::size_t i = 0; i < k_atoms; ++i) {
    const double s = std::exp(atoms[i].ln_scale - ln_top);
    for (std::size_t j = 0; j < m; ++j) v[i][j] = atoms[i].unit[j] * s;
    f[i] = atoms[i].prob();
  }
  if (with_origin) f[K - 1] = origin_mass;

  const std::size_t nvar = K + K * m;
  auto u_at = [](std::size_t i) { return i; };
  auto q_at = [&](std::size_t i, std::size_t j) { return K + i * m + j; };

  LinearProgram lp(nvar);
  double obj_scale = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    lp.objective[u_at(i)] = -f[i];
    obj_scale = std::max(obj_scale, f[i]);
    for (std::size_t j = 0; j < m; ++j) {
      lp.objective[q_at(i, j)] = f[i] * v[i][j];
      obj_scale = std::max(obj_scale, f[i] * v[i][j]);
    }
  }
  if (obj_scale <= 0.0) obj_scale = 1.0;
  for (double& c : lp.objective) c /= obj_scale;
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Vector row(nvar, 0.0);
      row[q_at(i, j)] = 1.0;
      lp.add_row(std::move(row), 1.0);
    }
  }

  SimplexSolver solver(lp, options.simplex);
  LpStatus st = solver.solve();
  MenuLpResult res;
  res.types = K;
  std::size_t round = 0;
  const std::size_t per_type = std::max<std::size_t>(1, options.cuts_per_type);
  std::vector<std::pair<double, std::size_t>> found;
  while (st == LpStatus::kOptimal) {
    const LinearProgramSolution sol = solver.solution();
    Vector t(K);
    for (std::size_t j = 0; j < K; ++j) {
      double vq = 0.0;
      for (std::size_t k = 0; k < m; ++k) vq += v[j][k] * sol.x[q_at(j, k)];
      t[j] = vq - sol.x[u_at(j)];
    }
    std::vector<Vector> cuts;
    for (std::size_t i = 0; i < K; ++i) {
      found.clear();
      for (std::size_t j = 0; j < K; ++j) {
        if (j == i) continue;
        double vq = 0.0;
        for (std::size_t k = 0; k < m; ++k) vq += v[i][k] * sol.x[q_at(j, k)];
        const double viol = vq - t[j] - sol.x[u_at(i)];
        if (viol > options.violation_tol) found.emplace_back(viol, j);
      }
      const std::size_t take = std::min(found.size(), per_type);
      std::partial_sort(found.begin(), found.begin() + static_cast<long>(take), found.end(),
                        [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
      for (std::size_t c = 0; c < take; ++c) {
        const std::size_t j = found[c].second;
        Vector row(nvar, 0.0);
        row[u_at(i)] = -1.0;
        row[u_at(j)] = 1.0;
        for (std::size_t k = 0; k < m; ++k) row[q_at(j, k)] = v[i][k] - v[j][k];
        cuts.push_back(std::move(row));
      }
    }
    if (cuts.empty()) break;
    if (++round > options.max_rounds) {
      throw std::runtime_error("optimal_menu_lp: constraint generation did not converge");
    }
    res.ic_rows += cuts.size();
    solver.drop_slack_rows(K * m, -1.0);
    st = solver.add_rows_and_resolve(cuts, Vector(cuts.size(), 0.0));
  }
  if (st != LpStatus::kOptimal) {
    throw std::runtime_error("optimal_menu_lp: internal error, LP status " + to_string(st));
  }
  res.rounds = round;
  res.lp = solver.solution();
  res.primal_objective = res.lp.objective;
  res.tableau_objective = solver.tableau_objective();
  res.menu = Menu(m);
  double revenue = 0.0;
  const double unscale = std::exp(ln_top);
  for (std::size_t i = 0; i < K; ++i) {
    Vector q(m);
    double vq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      q[j] = std::clamp(res.lp.x[q_at(i, j)], 0.0, 1.0);
      vq += v[i][j] * res.lp.x[q_at(i, j)];
    }
    const double t = vq - res.lp.x[u_at(i)];
    revenue += f[i] * t;
    res.menu.add(std::move(q), LogScaled::from_log(ln_top) * LogScaled::from_linear(std::max(0.0, t)));
  }
  res.report.revenue = revenue * unscale;
  return res;
}

}  // namespace smoothed
