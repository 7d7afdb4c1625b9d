#include "bnm/policy_switch.hpp"

#include <algorithm>

#include "bnm/baselines.hpp"
#include "bnm/errors.hpp"

namespace bnm {

bool should_initiate(const Observation& o, Cell l, std::span<const Observation> p) {
  if (!o.anomaly()) return false;
  const auto visits = std::count_if(p.begin(), p.end(), [l](const Observation& q) { return q.cell == l; });
  return visits == 1;
}

bool should_terminate(std::span<const Observation> p, int a) {
  const std::size_t len = p.size();
  const std::size_t window = static_cast<std::size_t>(a) + 1;
  const std::size_t first = len > window ? len - window : 0;
  for (std::size_t i = len; i-- > first;) {
    if (!p[i].anomaly()) continue;
    const bool seen_before = std::any_of(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i),
                                         [&](const Observation& q) { return q.cell == p[i].cell; });
    if (!seen_before) return false;
  }
  return true;
}

bool should_terminate(std::span<const std::uint8_t> novel_flags, int a) {
  const std::size_t len = novel_flags.size();
  const std::size_t window = static_cast<std::size_t>(a) + 1;
  const std::size_t first = len > window ? len - window : 0;
  return std::none_of(novel_flags.begin() + static_cast<std::ptrdiff_t>(first), novel_flags.end(),
                      [](std::uint8_t f) { return f != 0; });
}

namespace {

std::vector<std::pair<std::size_t, int>> pass_marks_for(const PathPlan& plan, Extent ext) {
  std::vector<std::pair<std::size_t, int>> marks;
  std::size_t cursor = 0;
  if (ext.width == 1) {
    const auto cells = plan_cells(plan);
    for (std::size_t i = 1; i < cells.size(); ++i) marks.emplace_back(i, cells[i].y);
    return marks;
  }
  for (std::size_t i = 1; i < plan.waypoints.size(); ++i) {
    const Cell a = plan.waypoints[i - 1];
    const Cell b = plan.waypoints[i];
    cursor += static_cast<std::size_t>(manhattan(a, b));
    if (a.y == b.y && manhattan(a, b) == ext.width - 1) marks.emplace_back(cursor, a.y);
  }
  return marks;
}

void install_plan(ControllerState& ctrl, PathPlan plan, Extent ext) {
  ctrl.moves = plan_moves(plan);
  ctrl.pass_marks = pass_marks_for(plan, ext);
  ctrl.plan = std::move(plan);
  ctrl.plan_cursor = 0;
  ctrl.next_mark = 0;
}

// Plans the next sweep from the robot's position. Returns false when nothing fits.
bool replan(ControllerState& ctrl, const RobotRun& run, bool after_inspection) {
  const Extent& ext = run.extent();
  const Cell pos = run.position();
  PlanRequest request;
  request.position = pos;
  request.swept_rows = ctrl.swept_rows;
  request.band_start_row = ctrl.frontier + 1;
  if (after_inspection) {
    request.band_start_row = std::max(ctrl.frontier + 1, pos.y);
    // Resume at the band corner on the side the sweep was heading when the
    // inspection began, then sweep back.
    request.d = opposite(ctrl.entry_direction);
  } else {
    request.d = pos.x == 0 ? Direction::East : Direction::West;
  }
  const double reserve = ctrl.inspected_any ? ctrl.config.reserve_fraction : 0.0;
  const BudgetLedger ledger = make_ledger(run.b_total(), run.b_remain(), reserve);
  PathPlan plan = plan_remaining(request, ext, ledger);
  ctrl.plan_log.push_back({run.moves(), after_inspection, ledger.b_avail(), plan.cost});
  if (plan.empty()) {
    install_plan(ctrl, PathPlan{}, ext);
    return false;
  }
  install_plan(ctrl, std::move(plan), ext);
  return true;
}

void enter_inspection(ControllerState& ctrl, RobotRun& run, Direction last_move) {
  ctrl.mode = Mode::CloseInspection;
  run.set_mode(Mode::CloseInspection);
  ctrl.inspected_any = true;
  ctrl.entry_direction = ctrl.last_horizontal;
  ctrl.grazing = GrazingTracker{Phase::Entry, last_move, ctrl.entry_direction};
}

}  // namespace

ControllerState start_controller(const GridMap& map, RobotRun& run, const SwitchConfig& config) {
  if (config.novelty_allowance < 1) throw ConfigError("novelty allowance must be at least 1");
  if (!is_horizontal(config.initial_direction)) throw ConfigError("initial direction must be East or West");
  estimate_close_inspect_reserve(0, config.reserve_fraction);  // validates the fraction

  ControllerState ctrl(map.extent());
  ctrl.config = config;
  ctrl.swept_rows.assign(static_cast<std::size_t>(map.height()), false);
  ctrl.last_horizontal = config.initial_direction;
  for (const Observation& o : run.trajectory()) ctrl.belief.record(o);

  PlanRequest request{run.position(), run.position().y, config.initial_direction, {}};
  const BudgetLedger ledger = make_ledger(run.b_total(), run.b_remain(), 0.0);
  PathPlan plan = plan_remaining(request, map.extent(), ledger);
  ctrl.plan_log.push_back({run.moves(), false, ledger.b_avail(), plan.cost});
  install_plan(ctrl, std::move(plan), map.extent());

  const Observation& here = run.trajectory().back();
  if (should_initiate(here, here.cell, run.trajectory())) {
    enter_inspection(ctrl, run, config.initial_direction);
  }
  return ctrl;
}

bool bnm_step(ControllerState& ctrl, RobotRun& run, const GridMap& map,
              const InspectionPolicy& policy) {
  if (ctrl.finished) return false;
  if (run.b_remain() < 1) {
    ctrl.finished = true;
    return false;
  }

  if (ctrl.mode == Mode::Boustrophedon) {
    if (ctrl.plan_cursor >= ctrl.moves.size() && !replan(ctrl, run, false)) {
      ctrl.finished = true;
      return false;
    }
    const Direction d = ctrl.moves[ctrl.plan_cursor++];
    const Observation& o = run.step(map, d);
    ctrl.belief.record(o);
    if (is_horizontal(d)) ctrl.last_horizontal = d;
    while (ctrl.next_mark < ctrl.pass_marks.size() &&
           ctrl.pass_marks[ctrl.next_mark].first == ctrl.plan_cursor) {
      const int row = ctrl.pass_marks[ctrl.next_mark++].second;
      ctrl.swept_rows[static_cast<std::size_t>(row)] = true;
      ctrl.frontier = std::max(ctrl.frontier, row);
    }
    if (o.anomaly() && run.visit_count(o.cell) == 1) enter_inspection(ctrl, run, d);
    return true;
  }

  const Cell pos = run.position();
  const ActionSet valid = valid_actions(pos, map.extent());
  if (valid.empty()) {
    ctrl.finished = true;
    return false;
  }
  const InspectionState s = encode_state(ctrl.belief, pos, ctrl.grazing.last_action,
                                         ctrl.grazing.phase, ctrl.grazing.entry_dir);
  const Direction a = policy.act(state_index(s), valid);
  const Observation& o = run.step(map, a);
  const bool fresh = ctrl.belief.record(o);
  ctrl.grazing.advance(a, fresh ? (o.anomaly() ? kCellNewAnomalous : kCellNewClear)
                                : (o.anomaly() ? kCellKnownAnomalous : kCellRevisited));
  if (is_horizontal(a)) ctrl.last_horizontal = a;

  if (should_terminate(std::span<const std::uint8_t>(run.novel_anomaly_flags()),
                       ctrl.config.novelty_allowance)) {
    ctrl.mode = Mode::Boustrophedon;
    run.set_mode(Mode::Boustrophedon);
    if (run.b_remain() > 0 && !replan(ctrl, run, true)) ctrl.finished = true;
  }
  return true;
}

RunRecord run_bnm(const GridMap& map, int b_total, const InspectionPolicy& policy,
                  const SwitchConfig& config, std::vector<PlanEvent>* plan_log) {
  RobotRun run(map, config.start, b_total);
  ControllerState ctrl = start_controller(map, run, config);
  while (bnm_step(ctrl, run, map, policy)) {
  }
  if (plan_log) *plan_log = ctrl.plan_log;
  return make_record(run, Algorithm::Bnm);
}

RunRecord run_episode(const GridMap& map, int b_total, Algorithm algorithm,
                      const InspectionPolicy* policy, std::uint64_t seed,
                      const SwitchConfig& config) {
  switch (algorithm) {
    case Algorithm::Bnm:
      if (!policy) throw ConfigError("bnm needs a close-inspection policy");
      return run_bnm(map, b_total, *policy, config);
    case Algorithm::Boustrophedon:
      return boustrophedon_run(map, b_total, config.start);
    case Algorithm::RandomWaypoint:
      return random_waypoint_run(map, b_total, seed, config.start);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace bnm
