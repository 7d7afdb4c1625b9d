#include "bnm/run_record.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bnm/errors.hpp"

namespace bnm {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Bnm: return "bnm";
    case Algorithm::Boustrophedon: return "boustrophedon";
    case Algorithm::RandomWaypoint: return "random";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::Bnm, Algorithm::Boustrophedon, Algorithm::RandomWaypoint}) {
    if (name == to_string(a)) return a;
  }
  throw ConfigError("unknown algorithm \"" + std::string(name) + "\" (expected bnm, boustrophedon or random)");
}

std::size_t RunRecord::cells_covered() const {
  std::vector<bool> seen(extent.cell_count(), false);
  std::size_t n = 0;
  for (const Observation& o : observations) {
    auto ref = seen[extent.index(o.cell)];
    if (!ref) {
      ref = true;
      ++n;
    }
  }
  return n;
}

double RunRecord::coverage_fraction() const {
  return static_cast<double>(cells_covered()) / static_cast<double>(extent.cell_count());
}

RunRecord make_record(const RobotRun& run, Algorithm algorithm) {
  return {algorithm, run.b_total(), run.extent(), run.trajectory(), run.mode_labels()};
}

void write_trace(std::ostream& out, const RunRecord& record) {
  out << "t,x,y,mode,obs\n";
  for (std::size_t t = 0; t < record.observations.size(); ++t) {
    const Observation& o = record.observations[t];
    out << t << ',' << o.cell.x << ',' << o.cell.y << ','
        << (record.modes[t] == Mode::CloseInspection ? 'C' : 'B') << ',' << (o.anomaly() ? 1 : 0)
        << '\n';
  }
}

RunRecord read_trace(std::istream& in, Extent extent, Algorithm algorithm, int b_total) {
  RunRecord record{algorithm, b_total, extent, {}, {}};
  std::string line;
  if (!std::getline(in, line) || line != "t,x,y,mode,obs") {
    throw FormatError(1, "expected header \"t,x,y,mode,obs\"");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    long t = 0;
    int x = 0;
    int y = 0;
    char mode = 0;
    int obs = 0;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    if (!(row >> t >> c1 >> x >> c2 >> y >> c3 >> mode >> c4 >> obs) || c1 != ',' || c2 != ',' ||
        c3 != ',' || c4 != ',') {
      throw FormatError(line_no, "expected \"t,x,y,mode,obs\"");
    }
    if (t != static_cast<long>(record.observations.size())) throw FormatError(line_no, "timesteps must count up from 0");
    if (mode != 'B' && mode != 'C') throw FormatError(line_no, "mode must be B or C");
    if (obs != 0 && obs != 1) throw FormatError(line_no, "obs must be 0 or 1");
    const Cell cell{x, y};
    if (!extent.contains(cell)) throw FormatError(line_no, "cell outside the grid");
    if (!record.observations.empty() && manhattan(record.observations.back().cell, cell) != 1) {
      throw FormatError(line_no, "consecutive cells must be 4-adjacent");
    }
    record.observations.push_back({cell, obs ? Reading::Anomaly : Reading::NoAnomaly, static_cast<int>(t)});
    record.modes.push_back(mode == 'C' ? Mode::CloseInspection : Mode::Boustrophedon);
  }
  if (record.observations.empty()) throw FormatError(line_no, "trace has no rows");
  return record;
}

void save_trace(const RunRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file " + path.string());
  write_trace(out, record);
}

}  // namespace bnm
