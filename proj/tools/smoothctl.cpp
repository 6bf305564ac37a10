// smoothctl: experiment driver for the smoothed-revenue library.
//
// Exit codes: 0 when every PASS condition holds, 1 when any row fails (the
// failing rows are named on stderr), 2 on a configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smoothed/analysis.hpp"
#include "smoothed/serialization.hpp"

using namespace smoothed;

namespace {

struct Config {
  std::string command;
  double delta = 0.1;
  std::size_t shells = 2000;
  std::string checkpoints;  // comma separated; empty means a default ladder
  std::size_t types = 200;
  std::size_t bases = 20;
  std::size_t atoms = 10;
  std::size_t samples = 100000;
  std::size_t items = 6;
  std::size_t subsets = 20;
  std::size_t instances = 20;
  std::size_t support = 3;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

struct Outcome {
  Table table;
  std::vector<std::string> failures;
  std::vector<std::pair<std::string, std::string>> meta;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return format_number(x); }
std::string num(std::size_t x) { return std::to_string(x); }

std::vector<std::size_t> parse_checkpoints(const std::string& text, std::size_t shells) {
  std::vector<std::size_t> out;
  if (text.empty()) {
    for (std::size_t c : {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000}) {
      if (c < shells) out.push_back(c);
    }
    out.push_back(shells);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("checkpoints: '" + item + "' is not a shell count");
    }
  }
  if (out.empty() || !std::is_sorted(out.begin(), out.end()) || out.front() < 2) {
    throw ConfigError("checkpoints must be ascending shell counts >= 2");
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome run_rect_lb(const Config& c) {
  if (!(c.delta > 0.0 && c.delta < 0.5)) throw ConfigError("rect-lb needs 0 < delta < 1/2");
  if (c.shells < 2) throw ConfigError("rect-lb needs shells >= 2");
  const DivergenceReport rep = divergence_report(c.delta, parse_checkpoints(c.checkpoints, c.shells));
  Outcome o;
  o.table.experiment = "rect-lb";
  o.table.columns = {"experiment", "delta", "shells", "points", "partial_sum", "brev", "brev_bound",
                     "ic",         "min_ic_margin", "ratio", "pass"};
  const double bound = 4.0 * (1.0 + c.delta);
  double prev = -1.0;
  for (const DivergenceRow& r : rep.rows) {
    const bool increasing = r.partial_sum > prev;
    prev = r.partial_sum;
    const bool ok = increasing && r.ic_pass && r.brev <= bound + 1e-9;
    o.table.add_row({"rect-lb", num(c.delta), num(r.shells), num(r.points), num(r.partial_sum), num(r.brev),
                     num(bound), format_bool(r.ic_pass), num(r.min_ic_margin), num(r.ratio), format_bool(ok)});
    if (!ok) o.failures.push_back("rect-lb shells=" + std::to_string(r.shells));
  }
  return o;
}

Outcome run_ratio(const Config& c, ModelKind kind) {
  if (!(c.delta > 0.0)) throw ConfigError("delta must be positive");
  if (kind == ModelKind::kAngleShift && c.delta > std::acos(0.0)) throw ConfigError("angle-ub needs delta <= pi/2");
  if (c.types < 1 || c.types > 399) throw ConfigError("types must lie in [1, 399]");
  const std::string name = kind == ModelKind::kAngleShift ? "angle-ub" : "square-ub";
  const PerturbationModel model(kind, c.delta);
  Outcome o;
  o.table.experiment = name;
  o.table.columns = {"experiment", "model", "delta", "base", "seed", "discretization", "types",
                     "lp_revenue", "brev", "ratio", "bound", "pass"};
  auto add = [&](const std::string& label, const DiscreteDistribution& base, std::uint64_t seed) {
    Rng rng(seed);
    const RatioReport r = smoothed_ratio_experiment(base, model, c.types, rng);
    o.table.add_row({name, to_string(kind), num(c.delta), label, std::to_string(seed), num(c.types), num(r.types),
                     num(r.lp_revenue), num(r.brev.revenue), num(r.ratio), num(r.bound.constant),
                     format_bool(r.pass)});
    if (!r.pass) o.failures.push_back(name + " base=" + label);
  };
  for (std::size_t b = 0; b < c.bases; ++b) {
    const std::uint64_t seed = derive_seed(c.seed, b);
    Rng rng(seed);
    add("random-" + std::to_string(b), random_base(c.atoms, 2, rng), seed);
  }
  add("lottery-50", lottery_base(50), derive_seed(c.seed, c.bases));
  return o;
}

Outcome run_multi_item(const Config& c) {
  if (c.items % 2 != 0 || c.items < 4 || c.items > 12) throw ConfigError("items must be even in [4, 12]");
  if (!(c.delta > 0.0)) throw ConfigError("delta must be positive");
  const SubsetConstruction sc = subset_construction(c.items, c.subsets, c.delta);
  std::vector<long> assignment(sc.distribution.size());
  for (std::size_t j = 0; j < assignment.size(); ++j) assignment[j] = static_cast<long>(j);
  const CornerIcReport ic = menu_corner_ic(sc.menu, sc.distribution, sc.model, assignment);
  const double revenue = tailored_revenue(sc.menu, sc.distribution);
  const double floor = static_cast<double>(c.items) * std::pow(2.0, static_cast<double>(c.items));
  const double brev = brev_smoothed({sc.distribution, sc.model}).revenue;
  const double cap = 4.0 * (1.0 + 2.0 * c.delta) / std::exp(sc.ln_normalizer);
  Outcome o;
  o.table.experiment = "multi-item-lb";
  o.table.columns = {"experiment", "check", "items", "subsets", "delta", "value", "bound", "pass"};
  auto add = [&](const std::string& check, double value, double bound, bool ok) {
    o.table.add_row({"multi-item-lb", check, num(c.items), num(c.subsets), num(c.delta), num(value), num(bound),
                     format_bool(ok)});
    if (!ok) o.failures.push_back("multi-item-lb " + check);
  };
  add("ic-corner-margin", ic.min_margin, 0.0, ic.pass);
  add("menu-revenue", revenue, floor, revenue >= floor);
  add("brev", brev, cap, brev <= cap);
  return o;
}

Outcome run_additive(const Config& c) {
  if (!(c.delta > 0.0 && c.delta < 0.25)) throw ConfigError("additive-noise needs 0 < delta < 1/4");
  Outcome o;
  o.table.experiment = "additive-noise";
  o.table.columns = {"experiment", "base", "delta", "seed", "support", "brev", "brev_at_least_delta", "welfare",
                     "welfare_bound", "welfare_check", "worst_price_ratio", "price_check", "pass"};
  auto add = [&](const std::string& label, const SmoothedDistribution& d, const std::string& seed) {
    const AdditiveNoiseReport r = additive_noise_check(d);
    o.table.add_row({"additive-noise", label, num(c.delta), seed, r.support_ok ? "ok" : r.support_message,
                     num(r.brev), format_bool(r.brev_at_least_delta), num(r.welfare),
                     r.welfare_bound_applies ? num(r.welfare_bound) : "n/a", format_bool(r.welfare_within_bound),
                     num(r.worst_price_ratio), format_bool(r.prices_within_brev), format_bool(r.pass())});
    if (!r.pass()) o.failures.push_back("additive-noise base=" + label);
  };
  const auto n = static_cast<std::size_t>(std::ceil(std::log(1.0 / c.delta)));
  add("scaled-n" + std::to_string(n), additive_scaled_distribution(n, c.delta), "-");
  for (std::size_t b = 0; b < c.bases; ++b) {
    const std::uint64_t seed = derive_seed(c.seed, b);
    Rng rng(seed);
    add("random-" + std::to_string(b),
        SmoothedDistribution{random_base(c.atoms, 2, rng), PerturbationModel(ModelKind::kAdditiveNoise, c.delta)},
        std::to_string(seed));
  }
  return o;
}

Outcome run_ronen(const Config& c) {
  if (c.support < 1 || c.support > 6) throw ConfigError("support must lie in [1, 6]");
  Outcome o;
  o.table.experiment = "ronen";
  o.table.columns = {"experiment", "instance", "seed", "second_price", "lookahead", "dsic_lp", "twice_lookahead",
                     "pass"};
  for (std::size_t k = 0; k < c.instances; ++k) {
    const std::uint64_t seed = derive_seed(c.seed, k);
    Rng rng(seed);
    const JointDiscreteDistribution joint = random_joint(2, c.support, rng);
    const double sp = second_price_bundle(joint).revenue;
    const double la = ronen_lookahead(joint).revenue;
    const double lp = dsic_optimal_lp(joint).report.revenue;
    const bool ok = 2.0 * la >= lp * (1.0 - 1e-9);
    o.table.add_row({"ronen", num(k), std::to_string(seed), num(sp), num(la), num(lp), num(2.0 * la),
                     format_bool(ok)});
    if (!ok) o.failures.push_back("ronen instance=" + std::to_string(k));
  }
  return o;
}

// Fast invariant suite; every check is expected to hold.
Outcome run_selftest(const Config& c) {
  Outcome o;
  o.table.experiment = "selftest";
  o.table.columns = {"experiment", "check", "seed", "value", "bound", "pass"};
  auto add = [&](const std::string& check, double value, double bound, bool ok) {
    o.table.add_row({"selftest", check, std::to_string(c.seed), num(value), num(bound), format_bool(ok)});
    if (!ok) o.failures.push_back("selftest " + check);
  };
  Rng rng(c.seed);

  for (std::size_t m = 2; m <= 8; ++m) {
    double worst = 1e300;
    for (int t = 0; t < 2000; ++t) {
      Vector angles(m - 1);
      for (double& a : angles) a = rng.uniform(0.0, std::acos(0.0));
      worst = std::min(worst, max_coord(trig_vector(angles)) * std::sqrt(static_cast<double>(m)));
    }
    add("trig-max-m" + std::to_string(m), worst, 1.0, worst >= 1.0 - 1e-12);
    const QuadratureResult q = sin_power_integral(static_cast<int>(m));
    const double bound = sin_power_integral_bound(static_cast<int>(m));
    add("sin-power-m" + std::to_string(m), q.value, bound, q.value <= bound + q.error_estimate);
  }

  {
    DiscreteDistribution d(2);
    d.add({1.0, 1.0}, 0.5);
    d.add({3.0, 3.0}, 0.5);
    const double brev = brev_discrete(d).revenue;
    add("brev-two-atoms", brev, 3.0, std::abs(brev - 3.0) < 1e-12);
    const double lp = optimal_menu_lp(d).report.revenue;
    add("menu-lp-dominates-brev", lp, brev, lp >= brev - 1e-9 && lp <= expected_welfare(d) + 1e-9);
  }

  for (std::size_t b = 0; b < 3; ++b) {
    Rng sub(derive_seed(c.seed, 100 + b));
    const DiscreteDistribution base = random_base(6, 2, sub);
    const SmoothedDistribution sd{base, PerturbationModel(ModelKind::kSquareShift, 0.2)};
    const double exact = bundle_tail(sd, 1.0);
    const Estimate mc = bundle_tail_mc(sd, 1.0, 20000, sub);
    add("bundle-tail-mc-" + std::to_string(b), exact, mc.value,
        std::abs(exact - mc.value) <= 5.0 * mc.std_error + 1e-3);
    const double lp = optimal_menu_lp(base).report.revenue;
    add("menu-lp-vs-srev-" + std::to_string(b), lp, srev_discrete(base).revenue,
        lp >= srev_discrete(base).revenue - 1e-9);
    const double smooth = brev_smoothed(sd).revenue;
    add("brev-dominance-" + std::to_string(b), smooth, brev_discrete(base).revenue,
        smooth >= brev_discrete(base).revenue - 1e-12);
  }

  {
    const PerturbationModel model(ModelKind::kRectangleShift, 0.1);
    const PointSequence seq = shell_points(0.1, 30);
    const GapSequence gaps = gap_sequence(seq, model);
    const Menu menu = tailored_menu(seq, gaps, seq.size());
    const IcCertificate cert = menu_ic_verify(menu, seq, gaps, model, seq.size());
    double margin = 1e300;
    for (const auto& t : cert.types) margin = std::min({margin, t.lower.margin, t.upper.margin});
    add("tailored-menu-ic", margin, -1e-9, cert.pass);
    double gap_sum = 0.0;
    for (double g : gaps.gaps) gap_sum += g;
    const double rev = tailored_revenue(menu, lottery_distribution(seq, gaps, seq.size()));
    add("revenue-identity", rev, gap_sum, std::abs(rev - gap_sum) <= 1e-10 * gap_sum);
    const double brev = brev_smoothed({lottery_distribution(seq, gaps, seq.size()), model}).revenue;
    add("lottery-brev", brev, 4.4, brev <= 4.4);
  }

  {
    const SpreadPoints sp = hn67_points(500);
    add("spread-constant", sp.constant, 0.0, sp.constant > 0.0);
  }

  {
    JointDiscreteDistribution j(2, 1);
    for (double a : {1.0, 2.0}) {
      for (double b : {1.0, 2.0}) j.add(Profile{{{a}, {b}}, 0.25});
    }
    const double sp = second_price_bundle(j).revenue;
    add("second-price-uniform", sp, 1.25, std::abs(sp - 1.25) < 1e-12);
    const double la = ronen_lookahead(j).revenue;
    const double lp = dsic_optimal_lp(j).report.revenue;
    add("lookahead-half-dsic", 2.0 * la, lp, 2.0 * la >= lp - 1e-9);
  }

  for (std::size_t b = 0; b < 3; ++b) {
    Rng sub(derive_seed(c.seed, 200 + b));
    RatioReport r = smoothed_ratio_experiment(random_base(6, 2, sub), PerturbationModel(ModelKind::kAngleShift, 0.3),
                                              40, sub);
    add("angle-ratio-" + std::to_string(b), r.ratio, r.bound.constant, r.pass);
  }
  return o;
}

// ---------------------------------------------------------------------------

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  // --config is pulled out first; its entries become flags placed before the
  // command-line ones so that explicit flags win.
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      config_path = args[k + 1];
      args.erase(args.begin() + static_cast<long>(k), args.begin() + static_cast<long>(k) + 2);
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      config_path = args[k].substr(9);
      args.erase(args.begin() + static_cast<long>(k));
      break;
    }
  }

  Config cfg;
  CLI::App app{"Smoothed multi-item revenue experiments"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Base seed (no wall-clock seeding)");
    sub->add_option("--out", cfg.out, "Output file (stdout when omitted)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    for (CLI::Option* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  };

  auto* rect = app.add_subcommand("rect-lb",
                                  "Rectangle-shift divergence table. Columns: experiment, delta, shells, points, "
                                  "partial_sum, brev, brev_bound, ic, min_ic_margin, ratio, pass");
  rect->add_option("--delta", cfg.delta, "Perturbation size, 0 < delta < 1/2");
  rect->add_option("--shells", cfg.shells, "Largest shell");
  rect->add_option("--checkpoints", cfg.checkpoints, "Comma separated shell counts");

  auto* square = app.add_subcommand("square-ub",
                                    "Square-shift ratio battery. Columns: experiment, model, delta, base, seed, "
                                    "discretization, types, lp_revenue, brev, ratio, bound, pass");
  auto* angle = app.add_subcommand("angle-ub", "Angle-shift ratio battery. Columns as for square-ub");
  for (auto* sub : {square, angle}) {
    sub->add_option("--delta", cfg.delta, "Perturbation size");
    sub->add_option("--types", cfg.types, "Discretization size for the menu LP");
    sub->add_option("--bases", cfg.bases, "Number of random bases");
    sub->add_option("--atoms", cfg.atoms, "Atoms per random base");
  }

  auto* multi = app.add_subcommand("multi-item-lb",
                                   "Subset construction checks. Columns: experiment, check, items, subsets, delta, "
                                   "value, bound, pass");
  multi->add_option("--items", cfg.items, "Number of items (even, 4..12)");
  multi->add_option("--subsets", cfg.subsets, "Number of types j_max");
  multi->add_option("--delta", cfg.delta, "Square-shift size");

  auto* additive = app.add_subcommand("additive-noise",
                                      "Additive-noise checks. Columns: experiment, base, delta, seed, support, brev, "
                                      "brev_at_least_delta, welfare, welfare_bound, welfare_check, "
                                      "worst_price_ratio, price_check, pass");
  additive->add_option("--delta", cfg.delta, "Noise size, 0 < delta < 1/4");
  additive->add_option("--bases", cfg.bases, "Number of random bases");
  additive->add_option("--atoms", cfg.atoms, "Atoms per random base");

  auto* ronen = app.add_subcommand("ronen",
                                   "Lookahead vs optimal DSIC. Columns: experiment, instance, seed, second_price, "
                                   "lookahead, dsic_lp, twice_lookahead, pass");
  ronen->add_option("--instances", cfg.instances, "Number of random instances");
  ronen->add_option("--support", cfg.support, "Values per buyer");

  auto* self = app.add_subcommand("selftest", "Invariant suite. Columns: experiment, check, seed, value, bound, pass");

  for (auto* sub : {rect, square, angle, multi, additive, ronen, self}) common(sub);
  for (auto* sub : app.get_subcommands({})) {
    for (CLI::Option* opt : sub->get_options()) {
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      opt->capture_default_str();
    }
  }

  try {
    if (!config_path.empty()) {
      const auto kv = read_config(config_path);
      std::string command;
      std::vector<std::string> injected;
      for (const auto& [k, v] : kv) {
        if (k == "command") {
          command = v;
        } else {
          injected.push_back("--" + k + "=" + v);
        }
      }
      const bool has_command = !args.empty() && args[0].rfind("-", 0) != 0;
      if (!has_command) {
        if (command.empty()) throw ConfigError("no command given on the command line or in the config file");
        args.insert(args.begin(), command);
      }
      args.insert(args.begin() + 1, injected.begin(), injected.end());
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "smoothctl: " << e.what() << "\n";
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();

  Outcome outcome;
  try {
    if (chosen == rect) outcome = run_rect_lb(cfg);
    else if (chosen == square) outcome = run_ratio(cfg, ModelKind::kSquareShift);
    else if (chosen == angle) outcome = run_ratio(cfg, ModelKind::kAngleShift);
    else if (chosen == multi) outcome = run_multi_item(cfg);
    else if (chosen == additive) outcome = run_additive(cfg);
    else if (chosen == ronen) outcome = run_ronen(cfg);
    else outcome = run_selftest(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "smoothctl: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "smoothctl: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "smoothctl: " << cfg.command << " failed: " << e.what() << "\n";
    return 1;
  }

  std::vector<std::pair<std::string, std::string>> meta{{"command", cfg.command}, {"seed", std::to_string(cfg.seed)}};
  for (const CLI::Option* opt : chosen->get_options()) {
    const std::string name = opt->get_name();
    if (name.rfind("--", 0) != 0 || name == "--help" || name == "--help-all" || name == "--out" ||
        name == "--format" || name == "--seed") {
      continue;
    }
    meta.emplace_back(name.substr(2), opt->count() ? opt->as<std::string>() : opt->get_default_str());
  }
  const std::string text = cfg.format == "json" ? to_json(outcome.table, meta) : to_csv(outcome.table);
  try {
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      write_file(cfg.out, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "smoothctl: " << e.what() << "\n";
    return 2;
  }
  for (const std::string& f : outcome.failures) std::cerr << "FAIL " << f << "\n";
  return outcome.failures.empty() ? 0 : 1;
}
