#include "bnm/gridworld.hpp"

#include <algorithm>
#include <string>

#include "bnm/errors.hpp"
#include "bnm/rng.hpp"

namespace bnm {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::North: return "North";
    case Direction::East: return "East";
    case Direction::South: return "South";
    case Direction::West: return "West";
  }
  return "?";
}

namespace {

Extent checked_extent(int width, int height) {
  if (width < 1 || height < 1) {
    throw ConfigError("grid dimensions must be positive, got " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
  return {width, height};
}

std::string describe(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

}  // namespace

GridMap::GridMap(int width, int height)
    : extent_(checked_extent(width, height)), labels_(extent_.cell_count(), 0) {}

GridMap::GridMap(int width, int height, std::vector<std::uint8_t> labels)
    : extent_(checked_extent(width, height)), labels_(std::move(labels)) {
  if (labels_.size() != extent_.cell_count()) {
    throw ConfigError("label count " + std::to_string(labels_.size()) + " does not match " +
                      std::to_string(width) + "x" + std::to_string(height));
  }
  if (std::any_of(labels_.begin(), labels_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw ConfigError("labels must be 0 or 1");
  }
}

bool GridMap::anomaly(Cell c) const {
  if (!extent_.contains(c)) throw BoundsError("cell " + describe(c) + " outside the grid");
  return anomaly_unchecked(c);
}

std::size_t GridMap::anomaly_count() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

GridMap generate_clustered_map(int width, int height, int n_clusters, int cluster_size,
                               std::uint64_t seed) {
  const Extent extent = checked_extent(width, height);
  if (n_clusters < 0) throw ConfigError("cluster count must be non-negative");
  if (cluster_size < 1) throw ConfigError("cluster size must be at least 1");

  std::vector<std::uint8_t> labels(extent.cell_count(), 0);
  std::size_t marked = 0;
  Rng rng = make_rng(seed, "map");

  auto mark = [&](Cell c) {
    auto& v = labels[extent.index(c)];
    if (v == 0) {
      v = 1;
      ++marked;
    }
  };

  std::array<Cell, 4> options{};
  for (int k = 0; k < n_clusters; ++k) {
    const Cell center{static_cast<int>(uniform_index(rng, static_cast<std::size_t>(width))),
                      static_cast<int>(uniform_index(rng, static_cast<std::size_t>(height)))};
    mark(center);
    Cell walker = center;
    for (int grown = 1; grown < cluster_size && marked < extent.cell_count();) {
      std::size_t n = 0;
      for (Direction d : kDirections) {
        const Cell next = neighbor(walker, d);
        if (extent.contains(next)) options[n++] = next;
      }
      if (n == 0) break;  // 1x1 grid
      walker = options[uniform_index(rng, n)];
      if (labels[extent.index(walker)] == 0) {
        mark(walker);
        ++grown;
      }
    }
  }
  return GridMap(width, height, std::move(labels));
}

Observation observe(const GridMap& map, Cell cell, int timestep) {
  return {cell, map.anomaly(cell) ? Reading::Anomaly : Reading::NoAnomaly, timestep};
}

RobotRun::RobotRun(const GridMap& map, Cell start, int b_total)
    : extent_(map.extent()), b_total_(b_total), visits_(extent_.cell_count(), 0) {
  if (b_total < 0) throw ConfigError("budget must be non-negative");
  record(observe(map, start, 0));
}

void RobotRun::record(const Observation& o) {
  auto& count = visits_[extent_.index(o.cell)];
  ++count;
  trajectory_.push_back(o);
  modes_.push_back(mode_);
  novel_.push_back(o.anomaly() && count == 1 ? 1 : 0);
}

const Observation& RobotRun::step(const GridMap& map, Direction action) {
  if (b_remain() < 1) throw BudgetError("exploration budget exhausted");
  const Cell next = neighbor(position(), action);
  if (!extent_.contains(next)) {
    throw BoundsError("move " + std::string(to_string(action)) + " from " + describe(position()) +
                      " leaves the grid");
  }
  record(observe(map, next, static_cast<int>(trajectory_.size())));
  return trajectory_.back();
}

void RobotRun::set_mode(Mode m) {
  mode_ = m;
  modes_.back() = m;
}

}  // namespace bnm
