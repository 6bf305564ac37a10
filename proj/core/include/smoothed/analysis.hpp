#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "smoothed/constructions.hpp"
#include "smoothed/distributions.hpp"
#include "smoothed/mechanisms.hpp"

namespace smoothed {

class UnsupportedBoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Revenue-to-benchmark constant for one (model, buyers, items) setting.
struct BoundSpec {
  ModelKind kind = ModelKind::kSquareShift;
  std::size_t buyers = 1;
  std::size_t items = 2;
  double delta = 0.0;
  double constant = 0.0;
  std::string theorem;
};

/// Supported: AngleShift with one buyer and two items, SquareShift with any
/// number of buyers and items >= 2. RectangleShift has no finite constant.
BoundSpec theorem_constant(ModelKind kind, std::size_t buyers, std::size_t items, double delta);

struct RatioReport {
  BoundSpec bound;
  std::size_t discretization = 0;
  std::size_t types = 0;  // LP types after merging duplicates
  double lp_revenue = 0.0;
  RevenueReport brev;
  double ratio = 0.0;
  bool pass = false;  // ratio <= constant, no slack
};

/// LP revenue of a k-point discretization of the smoothed distribution over
/// its exact optimal bundle revenue, against the theorem constant.
RatioReport smoothed_ratio_experiment(const DiscreteDistribution& base, const PerturbationModel& model,
                                      std::size_t k, Rng& rng);

struct DivergenceRow {
  std::size_t shells = 0;
  std::size_t points = 0;
  double partial_sum = 0.0;   // sum of gaps over those shells
  double brev = 0.0;          // exact, smoothed lottery distribution
  bool ic_pass = false;
  double min_ic_margin = 0.0;
  double ratio = 0.0;         // partial_sum / brev
};

struct DivergenceReport {
  double delta = 0.0;
  std::vector<DivergenceRow> rows;
  bool increasing = true;     // partial sums strictly increase
  bool brev_bounded = true;   // every brev <= 4 (1 + delta) + 1e-9
  bool pass() const;
};

/// Rectangle-shift shell construction evaluated at each checkpoint (shell
/// counts, ascending).
DivergenceReport divergence_report(double delta, const std::vector<std::size_t>& checkpoints);

struct AdditiveNoiseReport {
  bool support_ok = true;
  std::string support_message;
  double delta = 0.0;
  double brev = 0.0;
  bool brev_at_least_delta = false;     // (a)
  double welfare = 0.0;
  double welfare_bound = 0.0;           // brev (1 + ln(2 / brev))
  bool welfare_bound_applies = false;   // brev <= 2
  bool welfare_within_bound = false;    // (b), true when it does not apply
  double worst_price_ratio = 0.0;       // max over grid of x tail(x) / brev
  bool prices_within_brev = false;      // (c)
  bool pass() const;
};

/// Executable form of the additive-noise revenue argument: (a) the optimal
/// bundle revenue is at least delta, (b) expected welfare is at most
/// brev (1 + ln(2 / brev)) when brev <= 2, (c) x Pr[bundle >= x] <= brev on
/// 100 grid prices from brev to the top of the support. The base support must
/// lie in [0, 1]^2.
AdditiveNoiseReport additive_noise_check(const SmoothedDistribution& dist);

/// `atoms` values uniform on [0, scale]^m with random weights normalized to 1.
DiscreteDistribution random_base(std::size_t atoms, std::size_t m, Rng& rng, double scale = 1.0);

/// Correlated joint over `buyers` single-item buyers: each buyer gets
/// `support` distinct integer values in [1, 10], and every combination a
/// random weight.
JointDiscreteDistribution random_joint(std::size_t buyers, std::size_t support, Rng& rng);

/// Rectangle-shift lottery distribution (delta = 0.1 shells) truncated to
/// its first `types` atoms.
DiscreteDistribution lottery_base(std::size_t types);

/// Tabular experiment output; every cell is preformatted text.
struct Table {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// 12 significant digits, locale independent.
std::string format_number(double x);
std::string format_bool(bool pass);

std::string to_csv(const Table& table);

}  // namespace smoothed
