// Acceptance gate: one PASS/FAIL line per criterion and sub-part.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only
//
// Exit status is 0 only when every printed line is PASS.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "smoothed/analysis.hpp"
#include "two_type_oracle.hpp"

using namespace smoothed;

namespace {

int g_failures = 0;

void line(bool pass, const std::string& id, const std::string& text) {
  std::printf("%s %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(), text.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void runtime_line(const std::string& id, const Stopwatch& w, double budget) {
  const double s = w.seconds();
  line(s < budget, id, fmt("runtime %.1f s < %.0f s", s, budget));
}

// ---------------------------------------------------------------------------

void rectangle_lower_bound() {
  Stopwatch w;
  const double delta = 0.1;
  const DivergenceReport rep = divergence_report(delta, {200, 2000});
  const DivergenceRow& small = rep.rows[0];
  const DivergenceRow& large = rep.rows[1];

  line(large.ic_pass && small.ic_pass, "1a",
       fmt("IC certificate at 2000 shells, %zu types, min relative margin %.3g >= -1e-9", large.points,
           large.min_ic_margin));

  const PerturbationModel model(ModelKind::kRectangleShift, delta);
  const PointSequence seq = shell_points(delta, 2000);
  const GapSequence gaps = gap_sequence(seq, model);
  long double gap_sum = 0.0L;
  for (double g : gaps.gaps) gap_sum += g;
  const double revenue = tailored_revenue(tailored_menu(seq, gaps, seq.size()), lottery_distribution(seq, gaps, seq.size()));
  const double rel = std::abs(revenue - static_cast<double>(gap_sum)) / static_cast<double>(gap_sum);
  line(rel <= 1e-10, "1b", fmt("menu revenue %.12g vs gap sum %.12g, relative error %.2g <= 1e-10", revenue,
                               static_cast<double>(gap_sum), rel));

  const double cap = 4.0 * (1.0 + delta);
  line(small.brev <= cap && large.brev <= cap, "1c",
       fmt("exact smoothed BRev %.6f (200 shells), %.6f (2000 shells) <= %.1f", small.brev, large.brev, cap));

  const double uplift = large.partial_sum / small.partial_sum - 1.0;
  line(large.partial_sum > small.partial_sum && uplift >= 0.10, "1d",
       fmt("S(2000) = %.6f > S(200) = %.6f, uplift %.1f%% >= 10%%", large.partial_sum, small.partial_sum,
           100.0 * uplift));
  runtime_line("1e", w, 60.0);
}

void same_shell_gap() {
  Stopwatch w;
  const double delta = 0.1;
  const PerturbationModel model(ModelKind::kRectangleShift, delta);
  const PointSequence seq = shell_points(delta, 500);
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double l = seq.radius_of_shell(seq.shell_of[i]);
    const double theta = seq.angles[i];
    const double bound = 2.0 / (std::numbers::pi * std::numbers::pi) * l * l * delta * delta * theta * theta;
    const AxisBox box = image_region(model, seq.points[i]);
    for (std::size_t j = i; j-- > 0 && seq.shell_of[j] == seq.shell_of[i];) {
      const Vector diff{seq.points[i][0] - seq.points[j][0], seq.points[i][1] - seq.points[j][1]};
      const double got = box_min_dot(box, diff);
      ++pairs;
      if (got < bound) ++violations;
      worst = std::min(worst, got / bound);
    }
  }
  line(violations == 0, "2a",
       fmt("same-shell pairs up to shell 500: %zu checked, %zu below the bound, min ratio %.3f", pairs, violations,
           worst));
  runtime_line("2b", w, 30.0);
}

// Same seeds as `smoothctl square-ub` / `angle-ub` with the default --seed 1.
void ratio_battery(ModelKind kind, const std::string& id, double budget) {
  Stopwatch w;
  const char* sub = "abc";
  int k = 0;
  for (double delta : {0.1, 0.2, 0.5}) {
    const PerturbationModel model(kind, delta);
    std::size_t passed = 0;
    std::size_t total = 0;
    double worst = 0.0;
    double constant = 0.0;
    std::string failed;
    auto run = [&](const std::string& label, const DiscreteDistribution& base, std::uint64_t seed) {
      Rng rng(seed);
      const RatioReport r = smoothed_ratio_experiment(base, model, 200, rng);
      ++total;
      if (r.pass) {
        ++passed;
      } else {
        failed += " " + label;
      }
      worst = std::max(worst, r.ratio);
      constant = r.bound.constant;
    };
    for (std::uint64_t b = 0; b < 20; ++b) {
      const std::uint64_t seed = derive_seed(1, b);
      Rng rng(seed);
      run("random-" + std::to_string(b), random_base(10, 2, rng), seed);
    }
    run("lottery-50", lottery_base(50), derive_seed(1, 20));
    line(passed == total, id + sub[k++],
         fmt("%s delta=%.1f: %zu/%zu bases with LP/BRev <= %.4f, largest ratio %.4f%s", to_string(kind).c_str(),
             delta, passed, total, constant, worst, failed.empty() ? "" : (" failing:" + failed).c_str()));
  }
  runtime_line(id + "d", w, budget);
}

void multi_item_lower_bound() {
  Stopwatch w;
  const std::size_t m = 6;
  const std::size_t j_max = 20;
  const double delta = 0.05;
  const SubsetConstruction sc = subset_construction(m, j_max, delta);
  std::vector<long> assignment(sc.distribution.size());
  for (std::size_t j = 0; j < assignment.size(); ++j) assignment[j] = static_cast<long>(j);
  const CornerIcReport ic = menu_corner_ic(sc.menu, sc.distribution, sc.model, assignment);
  line(ic.pass, "5a", fmt("corner IC over all 2^6 corners of every type, min margin %.4g", ic.min_margin));

  // sum_j price_j prob_j in the log domain
  std::vector<double> terms;
  for (std::size_t j = 0; j < j_max; ++j) terms.push_back(sc.menu[j].price.ln() + sc.distribution.atoms()[j].ln_prob);
  const LogScaled revenue = LogScaled::from_log(log_sum_exp(terms));
  const LogScaled expected = LogScaled::from_linear(static_cast<double>(j_max)) / LogScaled::from_log(sc.ln_normalizer);
  const double floor = static_cast<double>(m) * std::pow(2.0, static_cast<double>(m));
  const bool exact = std::abs(revenue.ln() - expected.ln()) <= 1e-12;
  line(exact && revenue.linear() >= floor, "5b",
       fmt("menu revenue %.6f = j_max/C = %.6f and >= m 2^m = %.0f", revenue.linear(), expected.linear(), floor));

  const double brev = brev_smoothed({sc.distribution, sc.model}).revenue;
  const double cap = 4.0 * (1.0 + 2.0 * delta) / std::exp(sc.ln_normalizer);
  line(brev <= cap, "5c", fmt("exact smoothed BRev %.4f <= 4(1+2 delta)/C = %.4f", brev, cap));
  runtime_line("5d", w, 30.0);
}

void additive_noise() {
  Stopwatch w;
  const double delta = 0.05;
  const auto n = static_cast<std::size_t>(std::ceil(std::log(1.0 / delta)));
  const AdditiveNoiseReport s = additive_noise_check(additive_scaled_distribution(n, delta));
  line(s.support_ok, "6a", "scaled construction (n = " + std::to_string(n) + ") support in [0,1]^2" +
                               (s.support_ok ? std::string() : ": " + s.support_message));
  line(s.brev_at_least_delta, "6b", fmt("scaled construction: BRev %.6g >= delta = %.2f", s.brev, delta));
  line(s.welfare_within_bound, "6c",
       fmt("scaled construction: welfare %.6g <= BRev (1 + ln(2/BRev)) = %.6g", s.welfare, s.welfare_bound));
  line(s.prices_within_brev, "6d",
       fmt("scaled construction: max x Pr[bundle >= x] / BRev = %.6f <= 1", s.worst_price_ratio));

  std::size_t a = 0, b = 0, c = 0, support = 0;
  double min_brev = std::numeric_limits<double>::infinity();
  double worst_ratio = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const std::uint64_t seed = derive_seed(1, k);
    Rng rng(seed);
    const AdditiveNoiseReport r =
        additive_noise_check({random_base(10, 2, rng), PerturbationModel(ModelKind::kAdditiveNoise, delta)});
    support += r.support_ok;
    a += r.brev_at_least_delta;
    b += r.welfare_within_bound;
    c += r.prices_within_brev;
    min_brev = std::min(min_brev, r.brev);
    worst_ratio = std::max(worst_ratio, r.worst_price_ratio);
  }
  line(support == 50, "6e", fmt("random bases with support in [0,1]^2: %zu/50", support));
  line(a == 50, "6f", fmt("random bases: BRev >= delta on %zu/50 (smallest BRev %.4f)", a, min_brev));
  line(b == 50, "6g", fmt("random bases: welfare bound holds on %zu/50", b));
  line(c == 50, "6h", fmt("random bases: price check holds on %zu/50 (largest ratio %.6f)", c, worst_ratio));
  runtime_line("6i", w, 60.0);
}

void ronen() {
  Stopwatch w;
  std::size_t ok = 0;
  double tightest = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng(derive_seed(1, k));
    const JointDiscreteDistribution j = random_joint(2, 3, rng);
    const double la = ronen_lookahead(j).revenue;
    const double lp = dsic_optimal_lp(j).report.revenue;
    ok += 2.0 * la >= lp * (1.0 - 1e-9);
    tightest = std::min(tightest, 2.0 * la / lp);
  }
  line(ok == 20, "7a", fmt("2 lookahead >= DSIC LP on %zu/20 correlated instances (min ratio %.4f)", ok, tightest));

  JointDiscreteDistribution u(2, 1);
  for (double x : {1.0, 2.0}) {
    for (double y : {1.0, 2.0}) u.add(Profile{{{x}, {y}}, 0.25});
  }
  const double sp = second_price_bundle(u).revenue;
  line(std::abs(sp - 1.25) <= 1e-12, "7b", fmt("i.i.d. U{1,2}: second-price revenue %.6f = 1.25", sp));
  const double lp = dsic_optimal_lp(u).report.revenue;
  line(std::abs(lp - 1.75) <= 1e-9, "7c", fmt("i.i.d. U{1,2}: DSIC LP revenue %.6f = 1.75", lp));
  runtime_line("7d", w, 60.0);
}

void geometry_claims() {
  Stopwatch w;
  Rng rng(8);
  const double half_pi = std::numbers::pi / 2.0;

  std::size_t bad = 0;
  for (int t = 0; t < 100000; ++t) {
    const std::size_t m = 2 + rng.below(7);
    Vector angles(m - 1);
    for (double& a : angles) a = rng.uniform(0.0, half_pi);
    if (max_coord(trig_vector(angles)) < 1.0 / std::sqrt(static_cast<double>(m))) ++bad;
  }
  line(bad == 0, "8a", fmt("max trig coordinate >= 1/sqrt(m): %zu violations in 100000 angle vectors", bad));

  bad = 0;
  std::size_t hits = 0;
  for (int t = 0; t < 100000; ++t) {
    const ModelKind kind = (t % 2) ? ModelKind::kRectangleShift : ModelKind::kSquareShift;
    const std::size_t m = 2 + rng.below(3);
    const PerturbationModel model(kind, rng.uniform(0.0, 1.0));
    Vector x(m);
    for (double& c : x) c = rng.uniform(0.01, 1.0);
    Vector noise(m);
    for (double& u : noise) u = rng.uniform01();
    Vector target = apply(model, x, noise);
    for (double& c : target) c *= rng.uniform(0.98, 1.02);
    const auto r = radial_interval(model, x, to_polar(target).angles);
    if (!r) continue;
    ++hits;
    if (r->second > (1.0 + model.delta) * r->first * (1.0 + 1e-12)) ++bad;
  }
  line(bad == 0, "8b",
       fmt("radial interval ratio <= 1 + delta: %zu violations in 100000 box/ray pairs (%zu hit the box)", bad,
           hits));

  bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const double theta = rng.uniform(0.0, half_pi);
    const double delta = rng.uniform(0.0, 0.5);
    const Vector x = from_polar({rng.uniform(0.01, 10.0), {theta}});
    const AxisBox box = image_region(PerturbationModel(ModelKind::kRectangleShift, delta), x);
    const auto [lo, hi] = angle_deviation_bound(theta, delta);
    for (unsigned long long mask = 0; mask < 4; ++mask) {
      const double got = to_polar(box.corner(mask)).angles[0];
      if (got < lo - 1e-12 || got > hi + 1e-12) ++bad;
    }
  }
  line(bad == 0, "8c", fmt("RectangleShift corner angles within [theta(1-delta), theta(1+delta)]: %zu violations", bad));

  bool ok = true;
  std::string detail;
  for (int m = 2; m <= 8; ++m) {
    const QuadratureResult q = sin_power_integral(m);
    const double bound = sin_power_integral_bound(m);
    ok = ok && q.value <= bound + q.error_estimate;
    detail += fmt(" m=%d:%.4f/%.4f", m, q.value, bound);
  }
  line(ok, "8d", "sin-power integral <= bound for m = 2..8:" + detail);
  runtime_line("8e", w, 60.0);
}

void lp_oracle() {
  Stopwatch w;
  std::vector<std::array<double, 2>> grid;
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; b <= 5; ++b) grid.push_back({double(a), double(b)});
  }
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  double worst = 0.0;
  for (const auto& v1 : grid) {
    for (const auto& v2 : grid) {
      if (v1 == v2) continue;
      for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        DiscreteDistribution d(2);
        d.add({v1[0], v1[1]}, f);
        d.add({v2[0], v2[1]}, 1.0 - f);
        const double lp = optimal_menu_lp(d).report.revenue;
        const double truth = oracle::two_type_revenue(v1, v2, f, 1.0 - f);
        const double err = std::abs(lp - truth);
        worst = std::max(worst, err);
        ++instances;
        if (err > 1e-3) ++mismatches;
      }
    }
  }
  line(mismatches == 0, "9a",
       fmt("menu LP vs vertex enumeration on %zu two-type instances: %zu off by more than 1e-3 (max error %.2g)",
           instances, mismatches, worst));
  runtime_line("9b", w, 300.0);
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  status = pclose(pipe);
  return out;
}

void determinism() {
#ifdef SMOOTHCTL_PATH
  const std::string exe = SMOOTHCTL_PATH;
  int s1 = 0, s2 = 0;
  const std::string a = capture("'" + exe + "' selftest --seed 7", s1);
  const std::string b = capture("'" + exe + "' selftest --seed 7", s2);
  line(s1 == 0 && s2 == 0 && !a.empty() && a == b, "10a",
       fmt("selftest twice with seed 7: %zu bytes, byte-identical: %s, exit codes %d/%d", a.size(),
           a == b ? "yes" : "no", s1, s2));
#else
  line(false, "10a", "smoothctl was not built; determinism not checked");
#endif
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  const std::vector<std::function<void()>> criteria{
      rectangle_lower_bound,
      same_shell_gap,
      [] { ratio_battery(ModelKind::kSquareShift, "3", 600.0); },
      [] { ratio_battery(ModelKind::kAngleShift, "4", 300.0); },
      multi_item_lower_bound,
      additive_noise,
      ronen,
      geometry_claims,
      lp_oracle,
      determinism,
  };
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "acceptance: no criterion %d\n", only);
    return 2;
  }
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only == 0 || only == static_cast<int>(k + 1)) {
      try {
        criteria[k]();
      } catch (const std::exception& e) {
        line(false, std::to_string(k + 1), std::string("aborted: ") + e.what());
      }
    }
  }
  return g_failures == 0 ? 0 : 1;
}
