#include "bnm/coverage_planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "bnm/errors.hpp"

namespace bnm {

namespace {

int first_pass_length(Cell start, Direction d, Extent bounds) {
  switch (d) {
    case Direction::East: return bounds.width - 1 - start.x;
    case Direction::West: return start.x;
    default: throw ConfigError("sweep direction must be East or West");
  }
}

int pass_start_edge(Direction d, Extent bounds) { return d == Direction::East ? 0 : bounds.width - 1; }

// Appends a rectilinear hop to `to`, vertical leg first.
void travel(PathPlan& plan, Cell to) {
  const Cell from = plan.waypoints.back();
  const Cell corner{from.x, to.y};
  for (Cell c : {corner, to}) {
    if (c != plan.waypoints.back()) {
      plan.cost += manhattan(plan.waypoints.back(), c);
      plan.waypoints.push_back(c);
    }
  }
}

Direction step_towards(Cell from, Cell to) {
  if (to.x > from.x) return Direction::East;
  if (to.x < from.x) return Direction::West;
  if (to.y > from.y) return Direction::South;
  return Direction::North;
}

}  // namespace

std::vector<Direction> plan_moves(const PathPlan& plan) {
  std::vector<Direction> moves;
  moves.reserve(static_cast<std::size_t>(plan.cost));
  for (std::size_t i = 1; i < plan.waypoints.size(); ++i) {
    const Cell a = plan.waypoints[i - 1];
    const Cell b = plan.waypoints[i];
    const Direction d = step_towards(a, b);
    moves.insert(moves.end(), static_cast<std::size_t>(manhattan(a, b)), d);
  }
  return moves;
}

std::vector<Cell> plan_cells(const PathPlan& plan) {
  std::vector<Cell> cells;
  if (plan.waypoints.empty()) return cells;
  Cell c = plan.waypoints.front();
  cells.push_back(c);
  for (Direction d : plan_moves(plan)) {
    c = neighbor(c, d);
    cells.push_back(c);
  }
  return cells;
}

int estimate_close_inspect_reserve(int b_remain, double reserve_fraction) {
  if (!(reserve_fraction >= 0.0 && reserve_fraction < 1.0)) {
    throw ConfigError("reserve fraction must lie in [0, 1)");
  }
  if (b_remain <= 0) return 0;
  return static_cast<int>(std::floor(reserve_fraction * static_cast<double>(b_remain)));
}

BudgetLedger make_ledger(int b_total, int b_remain, double reserve_fraction) {
  return {b_total, b_remain, estimate_close_inspect_reserve(b_remain, reserve_fraction)};
}

std::vector<int> calc_y_steps(Cell start, Cell end, int b_avail, Direction d, Extent bounds) {
  if (!bounds.contains(start) || !bounds.contains(end)) {
    throw BoundsError("band endpoints must lie inside the grid");
  }
  if (b_avail <= 0) return {};
  const int first = first_pass_length(start, d, bounds);
  if (first > b_avail) return {};

  const int span = std::abs(end.y - start.y);
  const int rows_available = span + 1;
  const int step = end.y >= start.y ? 1 : -1;
  const int pass = bounds.width - 1;

  int n = 1;
  const int fixed = first + span;  // first pass plus all vertical travel
  if (rows_available >= 2 && fixed <= b_avail) {
    if (pass == 0) {
      n = rows_available;
    } else {
      n = std::min(rows_available, (b_avail - fixed) / pass + 1);
    }
  }

  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    rows.push_back(start.y);
    return rows;
  }
  for (int i = 0; i < n; ++i) {
    const long offset = static_cast<long>(i) * span / (n - 1);
    rows.push_back(start.y + step * static_cast<int>(offset));
  }
  return rows;
}

PathPlan gen_points(Cell start, std::span<const int> y_steps, Direction d, Extent bounds) {
  PathPlan plan;
  plan.d = d;
  if (y_steps.empty()) return plan;
  plan.waypoints.push_back(start);
  plan.y_steps.assign(y_steps.begin(), y_steps.end());
  Direction dir = d;
  for (int row : y_steps) {
    if (row < 0 || row >= bounds.height) throw BoundsError("row " + std::to_string(row) + " outside the grid");
    travel(plan, {plan.waypoints.back().x, row});
    travel(plan, {dir == Direction::East ? bounds.width - 1 : 0, row});
    dir = opposite(dir);
  }
  return plan;
}

PathPlan plan_remaining(const PlanRequest& request, Extent bounds, const BudgetLedger& ledger) {
  if (!bounds.contains(request.position)) throw BoundsError("plan start outside the grid");
  PathPlan plan;
  plan.d = request.d;
  const int b_avail = ledger.b_avail();
  if (b_avail <= 0) return plan;

  plan.waypoints.push_back(request.position);
  std::vector<bool> swept = request.swept_rows;
  swept.resize(static_cast<std::size_t>(bounds.height), false);

  if (request.band_start_row >= 0 && request.band_start_row < bounds.height) {
    const Cell corner{pass_start_edge(request.d, bounds), request.band_start_row};
    const int approach = manhattan(request.position, corner);
    if (approach < b_avail) {
      const std::vector<int> rows =
          calc_y_steps(corner, {corner.x, bounds.height - 1}, b_avail - approach, request.d, bounds);
      if (!rows.empty()) {
        travel(plan, corner);
        const PathPlan sweep = gen_points(corner, rows, request.d, bounds);
        for (std::size_t i = 1; i < sweep.waypoints.size(); ++i) travel(plan, sweep.waypoints[i]);
        plan.y_steps = rows;
        for (int r : rows) swept[static_cast<std::size_t>(r)] = true;
      }
    }
  }

  // Spare budget: full-width passes over the nearest rows not yet swept.
  int spare = b_avail - plan.cost;
  const int pass = bounds.width - 1;
  while (true) {
    const Cell cur = plan.waypoints.back();
    int best = -1;
    for (int r = 0; r < bounds.height; ++r) {
      if (swept[static_cast<std::size_t>(r)]) continue;
      if (best < 0 || std::abs(r - cur.y) < std::abs(best - cur.y)) best = r;
    }
    if (best < 0) break;
    const int edge = cur.x <= pass - cur.x ? 0 : pass;
    const int cost = std::abs(best - cur.y) + std::abs(cur.x - edge) + pass;
    if (cost > spare) break;
    travel(plan, {edge, best});
    travel(plan, {pass - edge, best});
    swept[static_cast<std::size_t>(best)] = true;
    spare -= cost;
  }

  if (plan.cost == 0) return PathPlan{{}, request.d, {}, 0};
  return plan;
}

PathPlan plan_remaining(Cell position, Extent bounds, const BudgetLedger& ledger, Direction d) {
  return plan_remaining(PlanRequest{position, position.y, d, {}}, bounds, ledger);
}

}  // namespace bnm
