#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smoothed/constructions.hpp"
#include "smoothed/distributions.hpp"
#include "smoothed/menu.hpp"
#include "smoothed/simplex.hpp"

namespace smoothed {

enum class Method { kExact, kMonteCarlo };
std::string to_string(Method m);

struct RevenueReport {
  double revenue = 0.0;
  Method method = Method::kExact;
  double std_error = 0.0;
  std::size_t samples = 0;
  LogScaled price;    // posted bundle price, when there is one
  Vector item_prices; // separate-sale prices, when there are some
};

/// sum over atoms of prob * price(best_response). Exact.
RevenueReport menu_revenue_discrete(const Menu& menu, const DiscreteDistribution& dist);

/// Monte Carlo expected payment under the perturbed distribution.
RevenueReport menu_revenue_smoothed(const Menu& menu, const SmoothedDistribution& dist,
                                    std::size_t samples, Rng& rng);

/// sum_i price_i * prob_i over the tailored entries, computed as
/// sum_i exp(ln price_i + ln prob_i).
double tailored_revenue(const Menu& menu, const DiscreteDistribution& dist);

struct IcPairMargin {
  double margin = std::numeric_limits<double>::infinity();  // relative
  long other = Menu::kNull;  // worst competing entry
};

struct IcTypeCertificate {
  IcPairMargin lower;  // against cheaper entries j < i and the null entry
  IcPairMargin upper;  // against entries j > i
};

struct IcFailure {
  std::size_t type = 0;
  long other = 0;
  unsigned long long corner = 0;  // bit k selects the upper end in item k
};

struct IcCertificate {
  bool pass = true;
  double tolerance = 1e-9;
  std::vector<IcTypeCertificate> types;
  std::optional<IcFailure> first_failure;
  std::size_t pairs_checked = 0;
  std::size_t pairs_bounded = 0;  // j > i pairs certified by a norm bound
};

/// Exact corner certificate that every perturbation of x_i prefers entry i.
///
/// (a) j < i and the null entry: min over the box of xhat . (x_i - x_j) >= gap_i.
/// (b) j > i: max over the box of xhat . x_j < price_j / M_i, where
///     ln M_i = ln price_i - ln gap_i, compared in log form.
/// Pairs j > i whose price ratio already exceeds the largest possible
/// xhat . x_j (Cauchy-Schwarz over the whole sequence) are counted as bounded
/// instead of enumerated. Margins are relative; PASS iff all >= -tolerance.
IcCertificate menu_ic_verify(const Menu& menu, const PointSequence& seq, const GapSequence& gaps,
                             const PerturbationModel& model, std::size_t truncate,
                             double tolerance = 1e-9);

/// Corner check that each atom strictly prefers its assigned entry to every
/// other entry and to the null entry, over the whole image box of the atom.
struct CornerIcReport {
  bool pass = true;
  double min_margin = std::numeric_limits<double>::infinity();  // in the atom's frame
  std::optional<IcFailure> first_failure;
};
CornerIcReport menu_corner_ic(const Menu& menu, const DiscreteDistribution& dist,
                              const PerturbationModel& model, const std::vector<long>& assignment);

/// Optimal posted bundle price; candidates are the distinct bundle sums, ties
/// resolved toward the lower price.
RevenueReport brev_discrete(const DiscreteDistribution& dist);

struct BrevOptions {
  std::size_t mc_samples = 200'000;
  std::uint64_t mc_seed = 1;
  std::size_t probes_per_piece = 24;
};

/// Exact optimal bundle price under smoothing: every breakpoint of the
/// piecewise revenue curve plus every stationary point found by bracketing
/// on each piece. Beyond 8 items under a box model this falls back to a Monte
/// Carlo estimate with a reported standard error.
RevenueReport brev_smoothed(const SmoothedDistribution& dist, const BrevOptions& options = {});

/// Sum over items of the optimal posted price on that item's marginal.
RevenueReport srev_discrete(const DiscreteDistribution& dist);

struct MenuLpOptions {
  std::size_t max_types = 400;
  double violation_tol = 1e-9;
  std::size_t max_rounds = 5000;
  std::size_t cuts_per_type = 1;  // most violated IC rows added per type and round
  SimplexOptions simplex;
};

struct MenuLpResult {
  Menu menu;
  RevenueReport report;
  LinearProgramSolution lp;
  std::size_t types = 0;
  std::size_t rounds = 0;
  std::size_t ic_rows = 0;
  double tableau_objective = 0.0;  // in the solver's normalized units
  double primal_objective = 0.0;   // recomputed from the solution vector
};

/// Revenue-optimal menu for the discrete type space (the first truncate_types
/// atoms, plus the origin when it carries mass). IC rows are generated lazily:
/// each round adds, for every type, its most violated IC constraint and
/// reoptimizes with the dual simplex.
MenuLpResult optimal_menu_lp(const DiscreteDistribution& dist, std::size_t truncate_types = 0,
                             const MenuLpOptions& options = {});

/// argmax_{w >= floor} w Pr[value >= w] over the support values at or above
/// the floor and the floor itself; ties go to the lowest price.
std::pair<double, double> monopoly_price(const std::vector<std::pair<double, double>>& values,
                                         double floor = 0.0);

/// Winner (-1 when nothing is sold) and the winner's payment.
struct AuctionOutcome {
  long winner = -1;
  double payment = 0.0;
};

/// Highest bundle bid wins (lowest index on ties) and pays the largest other bid.
AuctionOutcome second_price_outcome(const std::vector<Vector>& reported);

/// Lookahead outcome when the buyers report these rows; the conditional law
/// comes from the joint distribution.
AuctionOutcome lookahead_outcome(const JointDiscreteDistribution& joint, const std::vector<Vector>& reported);

/// Second-price auction for the grand bundle.
RevenueReport second_price_bundle(const JointDiscreteDistribution& joint);

/// Lookahead auction: the highest bundle bidder is offered the monopoly price
/// of their conditional bundle-value distribution given the others' values,
/// floored at the second-highest bid.
RevenueReport ronen_lookahead(const JointDiscreteDistribution& joint);

struct DsicLpResult {
  RevenueReport report;
  LinearProgramSolution lp;
  std::size_t type_profiles = 0;
};

/// Optimal DSIC, ex-post IR single-item auction (bundle values), randomized
/// allocations allowed, over the product of the buyers' marginal supports.
DsicLpResult dsic_optimal_lp(const JointDiscreteDistribution& joint);

}  // namespace smoothed
