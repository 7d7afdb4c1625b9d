#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace bnm {

/// Move directions. The numeric codes are part of the inspection state
/// encoding and must not change.
enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::North, Direction::East,
                                                         Direction::South, Direction::West};

constexpr int code(Direction d) { return static_cast<int>(d); }

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

constexpr bool is_horizontal(Direction d) { return d == Direction::East || d == Direction::West; }

std::string_view to_string(Direction d);

/// Grid coordinate. Row 0 is the top row; North decreases y.
struct Cell {
  int x = 0;
  int y = 0;
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

constexpr Cell neighbor(Cell c, Direction d) {
  switch (d) {
    case Direction::North: return {c.x, c.y - 1};
    case Direction::East: return {c.x + 1, c.y};
    case Direction::South: return {c.x, c.y + 1};
    case Direction::West: return {c.x - 1, c.y};
  }
  return c;
}

constexpr int manhattan(Cell a, Cell b) {
  return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

/// Grid dimensions.
struct Extent {
  int width = 0;
  int height = 0;

  constexpr bool contains(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height;
  }
  constexpr std::size_t cell_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  constexpr std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.x);
  }
  constexpr Cell cell_at(std::size_t i) const {
    return {static_cast<int>(i % static_cast<std::size_t>(width)),
            static_cast<int>(i / static_cast<std::size_t>(width))};
  }
  friend constexpr bool operator==(const Extent&, const Extent&) = default;
};

/// Ground-truth anomaly field. Immutable once built.
class GridMap {
 public:
  /// All-clear map. Throws ConfigError on non-positive dimensions.
  GridMap(int width, int height);
  /// Labels are row-major, each 0 or 1.
  GridMap(int width, int height, std::vector<std::uint8_t> labels);

  int width() const { return extent_.width; }
  int height() const { return extent_.height; }
  const Extent& extent() const { return extent_; }

  /// Throws BoundsError outside the grid.
  bool anomaly(Cell c) const;
  bool anomaly_unchecked(Cell c) const { return labels_[extent_.index(c)] != 0; }

  std::span<const std::uint8_t> labels() const { return labels_; }
  std::size_t anomaly_count() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  Extent extent_;
  std::vector<std::uint8_t> labels_;
};

/// Clustered anomaly field. Each cluster is the trail of one random walk from a
/// uniformly drawn center: every clear cell the walker enters is marked, and
/// the walk stops once the cluster has added `cluster_size` cells (center
/// included) or the grid is full. Clusters that touch merge. Deterministic in
/// all arguments.
GridMap generate_clustered_map(int width, int height, int n_clusters, int cluster_size,
                               std::uint64_t seed);

enum class Reading : std::uint8_t { NoAnomaly = 0, Anomaly = 1 };

struct Observation {
  Cell cell;
  Reading value = Reading::NoAnomaly;
  int timestep = 0;

  bool anomaly() const { return value == Reading::Anomaly; }
  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Noiseless sensing. Throws BoundsError outside the grid.
Observation observe(const GridMap& map, Cell cell, int timestep = 0);

enum class Mode : std::uint8_t { Boustrophedon, CloseInspection };

/// One robot's path, budget and mode history. The start cell is observed at
/// timestep 0; every move costs one budget unit and observes the new cell.
class RobotRun {
 public:
  RobotRun(const GridMap& map, Cell start, int b_total);

  Cell position() const { return trajectory_.back().cell; }
  int b_total() const { return b_total_; }
  int b_remain() const { return b_total_ - moves(); }
  int moves() const { return static_cast<int>(trajectory_.size()) - 1; }
  Mode mode() const { return mode_; }

  const std::vector<Observation>& trajectory() const { return trajectory_; }
  /// Mode after processing each timestep.
  const std::vector<Mode>& mode_labels() const { return modes_; }
  /// Per timestep: the observation was an anomaly at a cell seen for the first time.
  const std::vector<std::uint8_t>& novel_anomaly_flags() const { return novel_; }

  int visit_count(Cell c) const { return static_cast<int>(visits_[extent_.index(c)]); }
  const Extent& extent() const { return extent_; }

  /// Moves one cell. Throws BudgetError when b_remain is 0 and BoundsError for
  /// an off-grid destination; the run is unchanged in both cases.
  const Observation& step(const GridMap& map, Direction action);

  /// Switches mode; the label of the current timestep follows.
  void set_mode(Mode m);

 private:
  Extent extent_;
  int b_total_;
  Mode mode_ = Mode::Boustrophedon;
  std::vector<Observation> trajectory_;
  std::vector<Mode> modes_;
  std::vector<std::uint8_t> novel_;
  std::vector<std::uint32_t> visits_;

  void record(const Observation& o);
};

}  // namespace bnm
