#pragma once

#include <cstdint>

#include "bnm/gridworld.hpp"
#include "bnm/rng.hpp"
#include "bnm/run_record.hpp"

namespace bnm {

/// Deterministic stream of uniformly drawn in-bounds cells.
class WaypointSampler {
 public:
  WaypointSampler(std::uint64_t seed, Extent bounds)
      : bounds_(bounds), rng_(make_rng(seed, "waypoints")) {}
  Cell next();

 private:
  Extent bounds_;
  Rng rng_;
};

/// Budget-filling serpentine from (0,0), East first, with no inspection reserve.
RunRecord boustrophedon_run(const GridMap& map, int b_total, Cell start = {0, 0});

/// Walks horizontal-then-vertical L-paths to uniformly drawn waypoints until
/// the budget runs out.
RunRecord random_waypoint_run(const GridMap& map, int b_total, std::uint64_t seed,
                              Cell start = {0, 0});

}  // namespace bnm
