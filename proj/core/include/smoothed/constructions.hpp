#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "smoothed/distributions.hpp"
#include "smoothed/menu.hpp"

namespace smoothed {

/// Points on concentric quarter circles, listed shell by shell.
struct PointSequence {
  std::vector<Vector> points;
  Vector angles;                      // polar angle of each point
  std::vector<std::size_t> shell_of;  // shell number of each point
  std::size_t first_shell = 0;
  Vector shell_radii;                 // radius of shell first_shell + k
  double delta = 0.0;

  std::size_t size() const { return points.size(); }
  double radius_of_shell(std::size_t shell) const { return shell_radii.at(shell - first_shell); }
};

/// Bracket on sum_{k >= 2} 1/(k ln^2 k): the partial sum to `cutoff` plus the
/// integral-test tail bounds 1/ln(cutoff + 1) and 1/ln(cutoff).
struct ShellNormalizer {
  double low = 0.0;
  double high = 0.0;
  std::size_t cutoff = 0;
};
const ShellNormalizer& shell_normalizer();

/// c_k = 1 / (k ln^2 k).
double shell_weight(std::size_t k);

/// Shells N = 2..max_shell with radius (1/alpha) sum_{k=2}^N c_k, using the
/// upper end of the normalizer bracket so every radius stays <= 1. Shell N
/// carries the angles (pi/2)(1 - 3 delta)^(k-1), k = 1, 2, ..., while the
/// angle is at least sqrt(c_N). Requires 0 < delta < 1/2.
PointSequence shell_points(double delta, std::size_t max_shell);

class GapError : public std::runtime_error {
 public:
  GapError(const std::string& what, std::size_t i_, long j_) : std::runtime_error(what), i(i_), j(j_) {}
  std::size_t i;
  long j;  // -1 for the origin
};

struct GapSequence {
  Vector gaps;
  std::vector<long> binding;  // minimizing j per point, -1 for the origin
  PerturbationModel model;
};

/// gap_i = min over j < i (and the origin) of
///   min_{xhat in image_region(model, x_i)} xhat . (x_i - x_j).
/// Exact: the inner minimum is attained at a box corner. Throws GapError on a
/// nonpositive gap.
GapSequence gap_sequence(const PointSequence& seq, const PerturbationModel& model);

/// ln M_i for i = 1..truncate where M_i = 4^i / prod_{j<i} gap_j.
Vector lottery_log_multipliers(const Vector& gaps, std::size_t truncate);

/// Atoms M_i x_i with probability 1/M_i, i <= truncate; rest at the origin.
DiscreteDistribution lottery_distribution(const PointSequence& seq, const GapSequence& gaps,
                                          std::size_t truncate);

/// Entry i = (x_i, M_i gap_i).
Menu tailored_menu(const PointSequence& seq, const GapSequence& gaps, std::size_t truncate);

/// Points placed ceil(N^{3/4}) to a shell at equally spaced angles (both axes
/// included; a lone point sits at pi/4), shell radius
/// sum_{l<=N} l^{-3/2} / zeta(3/2). Within a shell, angles decrease.
struct SpreadPoints {
  PointSequence sequence;
  Vector gaps;        // q_k.q_k - max_{j<k} q_j.q_k, the origin included
  double constant = 0.0;  // min_k gap_k k^{6/7}
};
SpreadPoints hn67_points(std::size_t count);

/// Number of points on shell N of hn67_points.
std::size_t spread_shell_size(std::size_t shell);

struct SubsetConstruction {
  DiscreteDistribution distribution;
  Menu menu;
  std::vector<std::vector<std::size_t>> subsets;  // S_j, items in ascending order
  double ln_normalizer = 0.0;                      // ln C
  PerturbationModel model;                         // SquareShift(delta)
};

/// Type j = 1..j_max values each item of S_j at 2 m^{2j}, probability
/// m^{-2j} / C; entry j sells S_j for m^{2j}. S_j runs over the half-size
/// subsets of [m] in lexicographic order.
SubsetConstruction subset_construction(std::size_t m, std::size_t j_max, double delta);

/// Lottery over the first n spread points with M^k = 4^k / prod_{j<=k} gap^j,
/// every value divided by 4^{n+1}, under AdditiveNoise(delta, v_max = 1).
SmoothedDistribution additive_scaled_distribution(std::size_t n, double delta);

}  // namespace smoothed
