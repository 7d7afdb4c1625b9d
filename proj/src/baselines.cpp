#include "bnm/baselines.hpp"

#include "bnm/coverage_planner.hpp"

namespace bnm {

Cell WaypointSampler::next() {
  const int x = static_cast<int>(uniform_index(rng_, static_cast<std::size_t>(bounds_.width)));
  const int y = static_cast<int>(uniform_index(rng_, static_cast<std::size_t>(bounds_.height)));
  return {x, y};
}

RunRecord boustrophedon_run(const GridMap& map, int b_total, Cell start) {
  RobotRun run(map, start, b_total);
  const PathPlan plan =
      plan_remaining(start, map.extent(), make_ledger(b_total, b_total, 0.0), Direction::East);
  for (Direction d : plan_moves(plan)) {
    if (run.b_remain() < 1) break;
    run.step(map, d);
  }
  return make_record(run, Algorithm::Boustrophedon);
}

RunRecord random_waypoint_run(const GridMap& map, int b_total, std::uint64_t seed, Cell start) {
  RobotRun run(map, start, b_total);
  WaypointSampler sampler(seed, map.extent());
  if (map.extent().cell_count() > 1) {
    while (run.b_remain() > 0) {
      const Cell target = sampler.next();
      while (run.b_remain() > 0 && run.position() != target) {
        const Cell p = run.position();
        Direction d;
        if (p.x != target.x) {
          d = target.x > p.x ? Direction::East : Direction::West;
        } else {
          d = target.y > p.y ? Direction::South : Direction::North;
        }
        run.step(map, d);
      }
    }
  }
  return make_record(run, Algorithm::RandomWaypoint);
}

}  // namespace bnm
