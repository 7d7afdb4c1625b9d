#include "bnm/inspection_mdp.hpp"

#include <bit>
#include <string>

#include "bnm/errors.hpp"

namespace bnm {

BeliefGrid::BeliefGrid(Extent extent)
    : extent_(extent),
      knowledge_(extent.cell_count(), Knowledge::Unvisited),
      visits_(extent.cell_count(), 0) {}

bool BeliefGrid::record(const Observation& o) {
  const std::size_t i = extent_.index(o.cell);
  knowledge_[i] = o.anomaly() ? Knowledge::KnownAnomalous : Knowledge::KnownClear;
  return ++visits_[i] == 1;
}

int phase_rank(Phase p) {
  const int v = static_cast<int>(p);
  if (p == Phase::OffPattern) return 0;
  if (v < 0 || v >= kPhaseRanks) throw EncodingError("phase " + std::to_string(v) + " out of range");
  return v;
}

bool is_lateral_step(Phase p) { return p == Phase::TopStep || p == Phase::BottomStep; }

std::array<int, 8> InspectionState::as_vector() const {
  return {neighbors[0], neighbors[1], neighbors[2], neighbors[3], cell,
          code(last_action), static_cast<int>(phase), entry_dir == Direction::East ? 0 : 1};
}

InspectionState encode_state(const BeliefGrid& belief, Cell position, Direction last_action,
                             Phase phase, Direction entry_dir) {
  const Extent& ext = belief.extent();
  if (!ext.contains(position)) throw BoundsError("state position outside the grid");
  InspectionState s;
  for (Direction d : kDirections) {
    const Cell n = neighbor(position, d);
    std::uint8_t v = kNeighborOutOfArea;
    if (ext.contains(n)) {
      switch (belief.knowledge(n)) {
        case Knowledge::Unvisited: v = kNeighborUnvisited; break;
        case Knowledge::KnownClear: v = kNeighborClear; break;
        case Knowledge::KnownAnomalous: v = kNeighborAnomalous; break;
      }
    }
    s.neighbors[static_cast<std::size_t>(code(d))] = v;
  }
  const bool anomalous = belief.knowledge(position) == Knowledge::KnownAnomalous;
  if (belief.visits(position) == 1) {
    s.cell = anomalous ? kCellNewAnomalous : kCellNewClear;
  } else {
    s.cell = anomalous ? kCellKnownAnomalous : kCellRevisited;
  }
  s.last_action = last_action;
  s.phase = phase;
  s.entry_dir = entry_dir;
  return s;
}

int state_index(const InspectionState& s) {
  for (auto v : s.neighbors) {
    if (v > 3) throw EncodingError("neighbour code out of range");
  }
  if (s.cell > 3) throw EncodingError("current-cell code out of range");
  if (code(s.last_action) > 3) throw EncodingError("last action out of range");
  if (!is_horizontal(s.entry_dir)) throw EncodingError("entry direction must be East or West");
  int idx = 0;
  for (auto v : s.neighbors) idx = idx * 4 + v;
  idx = idx * 4 + s.cell;
  idx = idx * 4 + code(s.last_action);
  idx = idx * kPhaseRanks + phase_rank(s.phase);
  idx = idx * 2 + (s.entry_dir == Direction::East ? 0 : 1);
  return idx;
}

InspectionState decode_state(int index) {
  if (index < 0 || index >= kStateCount) throw EncodingError("state index out of range");
  InspectionState s;
  s.entry_dir = (index % 2 == 0) ? Direction::East : Direction::West;
  index /= 2;
  s.phase = static_cast<Phase>(index % kPhaseRanks);
  index /= kPhaseRanks;
  s.last_action = static_cast<Direction>(index % 4);
  index /= 4;
  s.cell = static_cast<std::uint8_t>(index % 4);
  index /= 4;
  for (int i = 3; i >= 0; --i) {
    s.neighbors[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % 4);
    index /= 4;
  }
  return s;
}

std::optional<Phase> pattern_step(Phase prev, Direction action, std::uint8_t new_cell,
                                  Direction entry_dir) {
  const bool anomalous = new_cell == kCellKnownAnomalous || new_cell == kCellNewAnomalous;
  const bool up = action == Direction::North;
  const bool down = action == Direction::South;
  const bool lateral = action == entry_dir;

  switch (prev) {
    case Phase::Entry:
    case Phase::OffPattern:
      if (up) return anomalous ? Phase::Ascend : Phase::TopExit;
      if (down) return anomalous ? Phase::Descend : Phase::BottomExit;
      return std::nullopt;
    case Phase::Ascend:
    case Phase::AscendAfterBottomStep:
      if (up) return anomalous ? prev : Phase::TopExit;
      return std::nullopt;
    case Phase::Descend:
    case Phase::DescendAfterTopStep:
      if (down) return anomalous ? prev : Phase::BottomExit;
      return std::nullopt;
    case Phase::TopExit:
      if (lateral) return Phase::TopStep;
      return std::nullopt;
    case Phase::BottomExit:
      if (lateral) return Phase::BottomStep;
      return std::nullopt;
    case Phase::TopStep:
      if (down) return anomalous ? Phase::DescendAfterTopStep : Phase::BottomExit;
      return std::nullopt;
    case Phase::BottomStep:
      if (up) return anomalous ? Phase::AscendAfterBottomStep : Phase::TopExit;
      return std::nullopt;
  }
  return std::nullopt;
}

Phase phase_transition(Phase prev, Direction action, std::uint8_t new_cell, Direction entry_dir) {
  if (auto next = pattern_step(prev, action, new_cell, entry_dir)) return *next;
  if (is_lateral_step(prev) && action == entry_dir) return prev;
  return Phase::OffPattern;
}

int reward(const InspectionState& prev, const InspectionState& next) {
  if (next.phase == Phase::OffPattern) return -1;
  const bool new_cell = next.cell == kCellNewClear || next.cell == kCellNewAnomalous;
  if (new_cell && pattern_step(prev.phase, next.last_action, next.cell, next.entry_dir)) return +1;
  if (is_lateral_step(prev.phase) && next.last_action == prev.entry_dir) return -10;
  return -1;
}

int ActionSet::size() const { return std::popcount(static_cast<unsigned>(bits_)); }

Direction ActionSet::nth(int i) const {
  for (Direction d : kDirections) {
    if (contains(d) && i-- == 0) return d;
  }
  throw std::out_of_range("action set index out of range");
}

ActionSet valid_actions(Cell position, Extent bounds) {
  ActionSet set;
  for (Direction d : kDirections) {
    if (bounds.contains(neighbor(position, d))) set.insert(d);
  }
  return set;
}

ActionSet valid_actions(const InspectionState& s) {
  ActionSet set;
  for (Direction d : kDirections) {
    if (s.neighbors[static_cast<std::size_t>(code(d))] != kNeighborOutOfArea) set.insert(d);
  }
  return set;
}

}  // namespace bnm
