#pragma once

#include <span>
#include <vector>

#include "bnm/gridworld.hpp"

namespace bnm {

/// Rectilinear boustrophedon plan. `waypoints` are segment endpoints, the
/// first being the cell the plan starts from.
struct PathPlan {
  std::vector<Cell> waypoints;
  Direction d = Direction::East;  // horizontal direction of the first pass
  std::vector<int> y_steps;       // rows swept by the serpentine, in sweep order
  int cost = 0;                   // moves

  bool empty() const { return waypoints.size() < 2; }
  friend bool operator==(const PathPlan&, const PathPlan&) = default;
};

/// Unit moves that walk the plan from its first waypoint.
std::vector<Direction> plan_moves(const PathPlan& plan);

/// Cells the plan visits, first waypoint included, in walk order.
std::vector<Cell> plan_cells(const PathPlan& plan);

struct BudgetLedger {
  int b_total = 0;
  int b_remain = 0;
  int c_close_inspect = 0;

  int b_avail() const { return b_remain - c_close_inspect; }
};

/// floor(reserve_fraction * b_remain). Requires 0 <= reserve_fraction < 1.
int estimate_close_inspect_reserve(int b_remain, double reserve_fraction);

BudgetLedger make_ledger(int b_total, int b_remain, double reserve_fraction);

/// Rows of the band between `start.y` and `end.y` (inclusive) chosen for a
/// serpentine whose first pass runs from `start` to the grid edge in
/// direction `d` and whose later passes are full width.
///
/// Returns the largest row set that fits `b_avail`: with n >= 2 rows the start
/// and end rows are pinned and the interior rows are start + floor(i*(R-1)/(n-1)),
/// which leaves the denser spacing near the start row. A single row is just the
/// start row. Empty when `b_avail` is 0 or cannot pay for the first pass.
std::vector<int> calc_y_steps(Cell start, Cell end, int b_avail, Direction d, Extent bounds);

/// Serpentine over `y_steps`: the first row from `start` in direction `d`, then
/// a vertical hop to each next row and a full pass in the alternated direction.
/// Zero-length segments are dropped. Empty `y_steps` gives an empty plan.
PathPlan gen_points(Cell start, std::span<const int> y_steps, Direction d, Extent bounds);

/// Inputs for plan_remaining beyond the ledger.
struct PlanRequest {
  Cell position;
  /// First row of the remaining band; the band runs to the last grid row.
  /// A value past the last row means there is no band left and only fill
  /// passes are planned.
  int band_start_row = 0;
  /// Direction of the first serpentine pass. The pass starts at the grid edge
  /// opposite to `d`; the robot travels there rectilinearly from `position`.
  Direction d = Direction::East;
  /// Rows already covered by earlier passes (indexed by row, may be empty).
  std::vector<bool> swept_rows;
};

/// Budget-aware coverage of the remaining band: travel to the band corner,
/// serpentine over calc_y_steps rows, then, while the spare budget allows,
/// extra full-width passes over the nearest rows not yet swept.
/// The returned cost never exceeds ledger.b_avail(); empty when nothing fits.
PathPlan plan_remaining(const PlanRequest& request, Extent bounds, const BudgetLedger& ledger);

/// Plan from `position` with the band starting at its row.
PathPlan plan_remaining(Cell position, Extent bounds, const BudgetLedger& ledger, Direction d);

}  // namespace bnm
