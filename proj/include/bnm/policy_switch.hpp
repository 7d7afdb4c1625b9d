#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bnm/coverage_planner.hpp"
#include "bnm/gridworld.hpp"
#include "bnm/inspection_mdp.hpp"
#include "bnm/learner.hpp"
#include "bnm/run_record.hpp"

namespace bnm {

/// Enter close inspection on the first visit of an anomalous cell.
/// `p` is the path to date; its last entry is the observation `o` at `l`.
bool should_initiate(const Observation& o, Cell l, std::span<const Observation> p);

/// Leave close inspection when none of the last a + 1 path entries (window
/// clamped at the start of the path) was a new anomaly, i.e. an anomalous
/// reading at a cell visited for the first time.
bool should_terminate(std::span<const Observation> p, int a);

/// Same decision from precomputed per-timestep new-anomaly flags.
bool should_terminate(std::span<const std::uint8_t> novel_flags, int a);

struct SwitchConfig {
  int novelty_allowance = 10;
  double reserve_fraction = 0.25;
  Cell start{0, 0};
  Direction initial_direction = Direction::East;
};

/// Budget context of every plan the controller computed.
struct PlanEvent {
  int timestep = 0;
  bool after_inspection = false;
  int b_avail = 0;
  int cost = 0;
};

struct ControllerState {
  explicit ControllerState(Extent extent) : belief(extent) {}

  SwitchConfig config;
  Mode mode = Mode::Boustrophedon;
  PathPlan plan;
  std::vector<Direction> moves;  // plan expanded into unit moves
  std::size_t plan_cursor = 0;   // next move to execute
  /// (plan cursor after which a full pass is complete, its row)
  std::vector<std::pair<std::size_t, int>> pass_marks;
  std::size_t next_mark = 0;
  std::vector<bool> swept_rows;
  int frontier = -1;  // highest fully swept row
  Direction entry_direction = Direction::East;
  Direction last_horizontal = Direction::East;
  GrazingTracker grazing;
  BeliefGrid belief;
  bool inspected_any = false;
  bool finished = false;
  std::vector<PlanEvent> plan_log;
};

/// Controller state for a fresh run: plans the initial sweep and checks the
/// start cell for an anomaly.
ControllerState start_controller(const GridMap& map, RobotRun& run, const SwitchConfig& config);

/// One timestep of the bounomodes loop. Returns false once the run has ended
/// (budget spent, or nothing left that fits the budget); no move is made then.
bool bnm_step(ControllerState& ctrl, RobotRun& run, const GridMap& map,
              const InspectionPolicy& policy);

/// BNM run to completion.
RunRecord run_bnm(const GridMap& map, int b_total, const InspectionPolicy& policy,
                  const SwitchConfig& config = {}, std::vector<PlanEvent>* plan_log = nullptr);

/// Runs any algorithm from the configured start cell. BNM requires `policy`
/// (ConfigError otherwise); `seed` drives the random-waypoint sampler.
RunRecord run_episode(const GridMap& map, int b_total, Algorithm algorithm,
                      const InspectionPolicy* policy, std::uint64_t seed,
                      const SwitchConfig& config = {});

}  // namespace bnm
