#pragma once

// Independent re-derivations used to check the library. None of these call
// into the code they are checking.

#include <cstdint>
#include <random>
#include <vector>

#include "bnm/gridworld.hpp"

namespace oracle {

/// 4-connected components of anomalous cells, by breadth-first flood fill.
int count_components(const bnm::GridMap& map);

/// Walks the waypoint list one cell at a time. Returns the number of moves,
/// or -1 if a segment is not axis-aligned or leaves the grid.
int walk_cost(const std::vector<bnm::Cell>& waypoints, bnm::Extent bounds);

/// Cells visited by that walk, in order, start included.
std::vector<bnm::Cell> walk_cells(const std::vector<bnm::Cell>& waypoints);

/// Serpentine over `rows` starting at `start` sweeping `east` first, built
/// literally as a list of corner points.
std::vector<bnm::Cell> serpentine(bnm::Cell start, const std::vector<int>& rows, bool east, int width);

/// Largest row count n for which some choice of n rows, start and end rows
/// included, gives a serpentine from `start` whose walked cost fits b_avail.
/// Enumerates every subset of the band for small bands.
int best_row_count(bnm::Cell start, int end_row, int b_avail, bool east, bnm::Extent bounds);

/// Disk estimator computed with floating-point radii from the textual rule.
std::vector<double> float_estimate(const std::vector<bnm::Observation>& observations, bnm::Extent bounds);

/// Asymmetric squared-error score summed in long double.
double score(const bnm::GridMap& truth, const std::vector<double>& estimate, double w_miss, double w_fa);

/// Small deterministic generator for property tests.
struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
  std::mt19937_64 rng;
};

/// Random map of the given size with roughly `density` anomalous cells.
bnm::GridMap random_map(Gen& gen, int width, int height, double density);

/// Random 4-connected walk of `steps` moves from `start`, as observations.
std::vector<bnm::Observation> random_walk(Gen& gen, const bnm::GridMap& map, bnm::Cell start, int steps);

}  // namespace oracle
