#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "smoothed/mechanisms.hpp"

namespace smoothed {

namespace {

constexpr std::size_t kMaxProfiles = 1'000'000;

void require_buyers(const JointDiscreteDistribution& joint, const char* who) {
  if (joint.buyers() < 2) throw std::invalid_argument(std::string(who) + ": needs at least two buyers");
  if (joint.profiles().size() > kMaxProfiles) throw std::length_error(std::string(who) + ": too many profiles");
}

Vector bundle_values(const Profile& p) {
  Vector out;
  out.reserve(p.values.size());
  for (const Vector& row : p.values) out.push_back(sum(row));
  return out;
}

// Highest index by value (lowest index on ties) and the largest other value.
std::pair<std::size_t, double> winner_and_floor(const Vector& b) {
  std::size_t win = 0;
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] > b[win]) win = i;
  }
  double second = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i == win) continue;
    second = any ? std::max(second, b[i]) : b[i];
    any = true;
  }
  return {win, second};
}

}  // namespace

std::pair<double, double> monopoly_price(const std::vector<std::pair<double, double>>& values, double floor) {
  std::vector<std::pair<double, double>> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  // tail[k] = Pr[value >= sorted[k].first]
  Vector tail(sorted.size() + 1, 0.0);
  for (std::size_t k = sorted.size(); k-- > 0;) tail[k] = tail[k + 1] + sorted[k].second;
  auto tail_at = [&](double w) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), std::pair<double, double>(w, -1e300));
    return tail[static_cast<std::size_t>(it - sorted.begin())];
  };
  double best_price = floor;
  double best_rev = floor * tail_at(floor);
  for (const auto& [w, prob] : sorted) {
    (void)prob;
    if (w < floor) continue;
    const double rev = w * tail_at(w);
    if (rev > best_rev + 1e-12 * std::max(1.0, std::abs(best_rev))) {
      best_rev = rev;
      best_price = w;
    }
  }
  return {best_price, best_rev};
}

AuctionOutcome second_price_outcome(const std::vector<Vector>& reported) {
  if (reported.size() < 2) throw std::invalid_argument("second_price_outcome: needs at least two buyers");
  Profile p{reported, 1.0};
  const auto [win, floor] = winner_and_floor(bundle_values(p));
  return {static_cast<long>(win), floor};
}

RevenueReport second_price_bundle(const JointDiscreteDistribution& joint) {
  require_buyers(joint, "second_price_bundle");
  RevenueReport r;
  for (const Profile& p : joint.profiles()) r.revenue += p.prob * second_price_outcome(p.values).payment;
  return r;
}

namespace {

using ConditionalLaws = std::vector<std::map<std::vector<Vector>, std::vector<std::pair<double, double>>>>;

// Bundle-value law of buyer i given the others' rows, unnormalized.
ConditionalLaws conditional_laws(const JointDiscreteDistribution& joint) {
  ConditionalLaws cond(joint.buyers());
  for (const Profile& p : joint.profiles()) {
    for (std::size_t i = 0; i < joint.buyers(); ++i) {
      std::vector<Vector> others = p.values;
      others.erase(others.begin() + static_cast<long>(i));
      cond[i][others].emplace_back(sum(p.values[i]), p.prob);
    }
  }
  return cond;
}

AuctionOutcome lookahead_with(const ConditionalLaws& cond, const std::vector<Vector>& reported) {
  Profile p{reported, 1.0};
  const Vector b = bundle_values(p);
  const auto [win, floor] = winner_and_floor(b);
  std::vector<Vector> others = reported;
  others.erase(others.begin() + static_cast<long>(win));
  const auto it = cond[win].find(others);
  if (it == cond[win].end()) return {};
  auto law = it->second;
  double mass = 0.0;
  for (const auto& e : law) mass += e.second;
  if (mass <= 0.0) return {};
  for (auto& e : law) e.second /= mass;
  const double offer = monopoly_price(law, floor).first;
  if (b[win] < offer) return {};
  return {static_cast<long>(win), offer};
}

}  // namespace

AuctionOutcome lookahead_outcome(const JointDiscreteDistribution& joint, const std::vector<Vector>& reported) {
  require_buyers(joint, "lookahead_outcome");
  if (reported.size() != joint.buyers()) throw std::invalid_argument("lookahead_outcome: wrong buyer count");
  return lookahead_with(conditional_laws(joint), reported);
}

RevenueReport ronen_lookahead(const JointDiscreteDistribution& joint) {
  require_buyers(joint, "ronen_lookahead");
  const ConditionalLaws cond = conditional_laws(joint);
  RevenueReport r;
  for (const Profile& p : joint.profiles()) r.revenue += p.prob * lookahead_with(cond, p.values).payment;
  return r;
}

DsicLpResult dsic_optimal_lp(const JointDiscreteDistribution& joint) {
  const std::size_t n = joint.buyers();
  if (n < 1 || n > 3) throw std::length_error("dsic_optimal_lp: supports at most three buyers");
  std::vector<Vector> support(n);
  for (const Profile& p : joint.profiles()) {
    for (std::size_t i = 0; i < n; ++i) support[i].push_back(sum(p.values[i]));
  }
  for (Vector& s : support) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() > 6) throw std::length_error("dsic_optimal_lp: a buyer has more than six bundle values");
  }
  // profiles over the product of supports, buyer 0 varying slowest
  std::size_t count = 1;
  for (const Vector& s : support) count *= s.size();
  std::vector<std::vector<std::size_t>> idx(count, std::vector<std::size_t>(n));
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rest = c;
    for (std::size_t i = n; i-- > 0;) {
      idx[c][i] = rest % support[i].size();
      rest /= support[i].size();
    }
  }
  auto flat = [&](const std::vector<std::size_t>& k) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c = c * support[i].size() + k[i];
    return c;
  };
  Vector f(count, 0.0);
  for (const Profile& p : joint.profiles()) {
    std::vector<std::size_t> k(n);
    for (std::size_t i = 0; i < n; ++i) {
      k[i] = static_cast<std::size_t>(std::lower_bound(support[i].begin(), support[i].end(), sum(p.values[i])) -
                                      support[i].begin());
    }
    f[flat(k)] += p.prob;
  }

  // variables: x(c, i) then u(c, i); payment = v x - u, u >= 0 is ex-post IR
  const std::size_t nvar = 2 * count * n;
  auto xv = [&](std::size_t c, std::size_t i) { return c * n + i; };
  auto uv = [&](std::size_t c, std::size_t i) { return count * n + c * n + i; };
  LinearProgram lp(nvar);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      lp.objective[xv(c, i)] = f[c] * support[i][idx[c][i]];
      lp.objective[uv(c, i)] = -f[c];
    }
    Vector row(nvar, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[xv(c, i)] = 1.0;
    lp.add_row(std::move(row), 1.0);
  }
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = support[i][idx[c][i]];
      for (std::size_t alt = 0; alt < support[i].size(); ++alt) {
        if (alt == idx[c][i]) continue;
        std::vector<std::size_t> k = idx[c];
        k[i] = alt;
        const std::size_t d = flat(k);
        // u(c) >= u(d) + (v_i - v_i') x(d)
        Vector row(nvar, 0.0);
        row[uv(c, i)] = -1.0;
        row[uv(d, i)] = 1.0;
        row[xv(d, i)] = vi - support[i][alt];
        lp.add_row(std::move(row), 0.0);
      }
    }
  }
  DsicLpResult res;
  res.type_profiles = count;
  res.lp = lp_solve(lp);
  if (res.lp.status != LpStatus::kOptimal) {
    throw std::runtime_error("dsic_optimal_lp: internal error, LP status " + to_string(res.lp.status));
  }
  res.report.revenue = res.lp.objective;
  return res;
}

}  // namespace smoothed
