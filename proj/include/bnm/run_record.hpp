#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "bnm/gridworld.hpp"

namespace bnm {

enum class Algorithm : std::uint8_t { Bnm, Boustrophedon, RandomWaypoint };

/// CLI names: "bnm", "boustrophedon", "random".
std::string_view to_string(Algorithm a);
/// Throws ConfigError on an unknown name.
Algorithm parse_algorithm(std::string_view name);

/// Everything a finished run leaves behind for scoring.
struct RunRecord {
  Algorithm algorithm = Algorithm::Boustrophedon;
  int b_total = 0;
  Extent extent;
  std::vector<Observation> observations;  // one per timestep, start cell at t = 0
  std::vector<Mode> modes;                // mode after each timestep

  int moves() const { return static_cast<int>(observations.size()) - 1; }
  /// Distinct cells observed.
  std::size_t cells_covered() const;
  double coverage_fraction() const;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

RunRecord make_record(const RobotRun& run, Algorithm algorithm);

// Trace format: header "t,x,y,mode,obs", then one row per timestep with mode
// B or C and obs 0 or 1.
void write_trace(std::ostream& out, const RunRecord& record);
/// Reads a trace produced by any planner. The trace carries no budget or grid
/// size, so those come from the caller. Throws FormatError naming the line.
RunRecord read_trace(std::istream& in, Extent extent, Algorithm algorithm, int b_total);

void save_trace(const RunRecord& record, const std::filesystem::path& path);

}  // namespace bnm
