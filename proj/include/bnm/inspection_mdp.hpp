#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bnm/gridworld.hpp"

namespace bnm {

/// Per-cell knowledge accumulated by the robot.
enum class Knowledge : std::uint8_t { Unvisited = 0, KnownClear = 1, KnownAnomalous = 2 };

class BeliefGrid {
 public:
  explicit BeliefGrid(Extent extent);

  const Extent& extent() const { return extent_; }
  Knowledge knowledge(Cell c) const { return knowledge_[extent_.index(c)]; }
  std::uint32_t visits(Cell c) const { return visits_[extent_.index(c)]; }

  /// Records a visit and its observation. Returns true on the first visit.
  bool record(const Observation& o);

 private:
  Extent extent_;
  std::vector<Knowledge> knowledge_;
  std::vector<std::uint32_t> visits_;
};

// Neighbour codes (s0..s3).
inline constexpr std::uint8_t kNeighborUnvisited = 0;
inline constexpr std::uint8_t kNeighborClear = 1;
inline constexpr std::uint8_t kNeighborAnomalous = 2;
inline constexpr std::uint8_t kNeighborOutOfArea = 3;

// Current-cell codes (s4). Codes 2 and 3 only occur on the timestep of the
// first visit.
inline constexpr std::uint8_t kCellRevisited = 0;        // seen before, clear
inline constexpr std::uint8_t kCellKnownAnomalous = 1;   // seen before, anomalous
inline constexpr std::uint8_t kCellNewClear = 2;         // first visit, clear
inline constexpr std::uint8_t kCellNewAnomalous = 3;     // first visit, anomalous

/// Phase of the grazing pattern: vertical sweeps through the cluster joined by
/// single lateral steps in the entry direction.
enum class Phase : std::uint8_t {
  Entry = 0,
  Ascend = 1,
  TopExit = 2,
  TopStep = 3,
  Descend = 4,
  BottomExit = 5,
  BottomStep = 6,
  AscendAfterBottomStep = 7,
  DescendAfterTopStep = 8,
  OffPattern = 12,
};

inline constexpr int kPhaseRanks = 9;
inline constexpr int kStateCount = 4 * 4 * 4 * 4 * 4 * 4 * kPhaseRanks * 2;  // 73728
inline constexpr int kActionCount = 4;

/// Index of a phase in the 9-way radix. OffPattern shares Entry's rank: both
/// accept exactly the same continuations, so they are the same decision state.
int phase_rank(Phase p);

bool is_lateral_step(Phase p);

/// The 8-integer close-inspection state.
struct InspectionState {
  std::array<std::uint8_t, 4> neighbors{};  // s0..s3, N E S W
  std::uint8_t cell = kCellRevisited;        // s4
  Direction last_action = Direction::North;  // s5
  Phase phase = Phase::Entry;                // s6
  Direction entry_dir = Direction::East;     // s7, East or West only

  /// s as written in the state vector; s7 is 0 for East, 1 for West.
  std::array<int, 8> as_vector() const;
  friend bool operator==(const InspectionState&, const InspectionState&) = default;
};

InspectionState encode_state(const BeliefGrid& belief, Cell position, Direction last_action,
                             Phase phase, Direction entry_dir);

/// Mixed-radix index in [0, kStateCount). Throws EncodingError on a field
/// outside its range.
int state_index(const InspectionState& s);

/// Inverse of state_index; the phase comes back as its rank (never OffPattern).
InspectionState decode_state(int index);

/// Continuation allowed by the grazing pattern, if any. OffPattern accepts the
/// same continuations as Entry.
std::optional<Phase> pattern_step(Phase prev, Direction action, std::uint8_t new_cell,
                                  Direction entry_dir);

/// Total transition: the pattern continuation when there is one; a repeated
/// lateral step holds the lateral-step phase; anything else is OffPattern.
Phase phase_transition(Phase prev, Direction action, std::uint8_t new_cell, Direction entry_dir);

/// Reward for reaching `next` from `prev`, evaluated in order:
/// off-pattern -1; pattern continuation onto a newly visited cell +1;
/// second consecutive lateral step (column skipped) -10; otherwise -1.
int reward(const InspectionState& prev, const InspectionState& next);

/// Directions whose destination stays in the grid, as a bit set over
/// Direction codes.
class ActionSet {
 public:
  constexpr ActionSet() = default;
  constexpr explicit ActionSet(std::uint8_t bits) : bits_(bits) {}

  constexpr bool contains(Direction d) const { return (bits_ >> code(d)) & 1U; }
  constexpr void insert(Direction d) { bits_ = static_cast<std::uint8_t>(bits_ | (1U << code(d))); }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const;
  /// i-th member in Direction order.
  Direction nth(int i) const;
  constexpr std::uint8_t bits() const { return bits_; }
  friend constexpr bool operator==(ActionSet, ActionSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

ActionSet valid_actions(Cell position, Extent bounds);

/// Actions whose neighbour code is not out-of-area; equals valid_actions at
/// the encoded position.
ActionSet valid_actions(const InspectionState& s);

/// Tracks the pattern phase and last action across close-inspection steps.
struct GrazingTracker {
  Phase phase = Phase::Entry;
  Direction last_action = Direction::East;
  Direction entry_dir = Direction::East;

  /// Applies a move that landed on a cell with current-cell code `new_cell`.
  void advance(Direction action, std::uint8_t new_cell) {
    phase = phase_transition(phase, action, new_cell, entry_dir);
    last_action = action;
  }
};

}  // namespace bnm
