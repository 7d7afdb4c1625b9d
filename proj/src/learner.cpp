#include "bnm/learner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "bnm/errors.hpp"
#include "bnm/policy_switch.hpp"

namespace bnm {

QPolicy::QPolicy() : values_(static_cast<std::size_t>(kStateCount) * kActionCount, 0.0) {}

Direction QPolicy::greedy(int state, ActionSet valid) const {
  Direction best = Direction::North;
  double best_q = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (Direction d : kDirections) {
    if (!valid.contains(d)) continue;
    const double v = q(state, d);
    if (!found || v > best_q) {
      best = d;
      best_q = v;
      found = true;
    }
  }
  return best;
}

double QPolicy::max_q(int state, ActionSet valid) const {
  if (valid.empty()) return 0.0;
  return q(state, greedy(state, valid));
}

void Hyperparams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("learning rate must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("discount must lie in [0, 1)");
  for (double e : {epsilon_start, epsilon_end}) {
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("exploration rate must lie in [0, 1]");
  }
  if (!(epsilon_decay_fraction >= 0.0 && epsilon_decay_fraction <= 1.0)) {
    throw ConfigError("exploration decay fraction must lie in [0, 1]");
  }
  if (episode_cap < 1) throw ConfigError("episode cap must be at least 1");
  if (novelty_allowance < 1) throw ConfigError("novelty allowance must be at least 1");
}

double Hyperparams::epsilon(std::int64_t step, std::int64_t total_steps) const {
  const double horizon = epsilon_decay_fraction * static_cast<double>(total_steps);
  if (horizon <= 0.0) return epsilon_end;
  const double t = std::min(1.0, static_cast<double>(step) / horizon);
  return epsilon_start + (epsilon_end - epsilon_start) * t;
}

void q_update(QPolicy& policy, int s, Direction a, double r, int s_next, bool terminal,
              const Hyperparams& hp) {
  if (s < 0 || s >= kStateCount || s_next < 0 || s_next >= kStateCount) {
    throw EncodingError("state index out of range");
  }
  if (!std::isfinite(r) || !std::isfinite(hp.alpha) || !std::isfinite(hp.gamma)) {
    throw NumericError("non-finite input to value update");
  }
  const double bootstrap =
      terminal ? 0.0 : policy.max_q(s_next, valid_actions(decode_state(s_next)));
  const double current = policy.q(s, a);
  const double updated = current + hp.alpha * (r + hp.gamma * bootstrap - current);
  if (!std::isfinite(updated)) throw NumericError("value update produced a non-finite value");
  policy.set_q(s, a, updated);
}

EpisodeStart task_start(const GridMap& map, Task task) {
  const Extent& ext = map.extent();
  std::vector<int> component(ext.cell_count(), -1);
  std::vector<Cell> best;
  std::vector<Cell> current;
  std::vector<Cell> stack;
  int label = 0;
  for (std::size_t i = 0; i < ext.cell_count(); ++i) {
    const Cell seed = ext.cell_at(i);
    if (!map.anomaly_unchecked(seed) || component[i] >= 0) continue;
    current.clear();
    stack.assign(1, seed);
    component[i] = label;
    while (!stack.empty()) {
      const Cell c = stack.back();
      stack.pop_back();
      current.push_back(c);
      for (Direction d : kDirections) {
        const Cell n = neighbor(c, d);
        if (ext.contains(n) && map.anomaly_unchecked(n) && component[ext.index(n)] < 0) {
          component[ext.index(n)] = label;
          stack.push_back(n);
        }
      }
    }
    if (current.size() > best.size()) best = current;
    ++label;
  }
  if (best.empty()) throw ConfigError("map has no anomaly cells to inspect");

  auto [lo, hi] = std::minmax_element(best.begin(), best.end(),
                                      [](Cell a, Cell b) { return a.y < b.y; });
  const int row = (lo->y + hi->y) / 2;
  int left = ext.width;
  int right = -1;
  for (Cell c : best) {
    if (c.y != row) continue;
    left = std::min(left, c.x);
    right = std::max(right, c.x);
  }

  EpisodeStart start;
  if (task == Task::RightEdge) {
    start.start = {right, row};
    start.entry_dir = Direction::West;
    for (int x = ext.width - 1; x > right; --x) start.approach.push_back({x, row});
  } else {
    start.start = {left, row};
    start.entry_dir = Direction::East;
    for (int x = 0; x < left; ++x) start.approach.push_back({x, row});
  }
  return start;
}

InspectionEpisode::InspectionEpisode(const GridMap& map, const EpisodeStart& start,
                                     int novelty_allowance)
    : map_(&map),
      belief_(map.extent()),
      position_(start.start),
      novelty_allowance_(novelty_allowance) {
  if (!is_horizontal(start.entry_dir)) throw ConfigError("entry direction must be East or West");
  for (Cell c : start.approach) belief_.record(observe(map, c));
  const Observation first = observe(map, start.start);
  const bool fresh = belief_.record(first);
  novel_.push_back(first.anomaly() && fresh ? 1 : 0);
  anomalies_found_ = novel_.back();
  tracker_.entry_dir = start.entry_dir;
  tracker_.last_action = start.entry_dir;
  state_ = encode_state(belief_, position_, tracker_.last_action, tracker_.phase, tracker_.entry_dir);
}

StepResult InspectionEpisode::step(Direction action) {
  const Cell next = neighbor(position_, action);
  if (!map_->extent().contains(next)) throw BoundsError("inspection move leaves the grid");
  const Observation o = observe(*map_, next, steps_ + 1);
  const bool fresh = belief_.record(o);
  position_ = next;
  const std::uint8_t cell_code = fresh ? (o.anomaly() ? kCellNewAnomalous : kCellNewClear)
                                       : (o.anomaly() ? kCellKnownAnomalous : kCellRevisited);
  tracker_.advance(action, cell_code);
  const InspectionState next_state =
      encode_state(belief_, position_, tracker_.last_action, tracker_.phase, tracker_.entry_dir);

  StepResult result;
  result.reward = reward(state_, next_state);
  result.new_anomaly = o.anomaly() && fresh;
  state_ = next_state;
  novel_.push_back(result.new_anomaly ? 1 : 0);
  anomalies_found_ += result.new_anomaly ? 1 : 0;
  total_reward_ += result.reward;
  ++steps_;
  done_ = should_terminate(std::span<const std::uint8_t>(novel_), novelty_allowance_);
  result.done = done_;
  return result;
}

EvalReport evaluate(const InspectionPolicy& policy, const GridMap& map, const EpisodeStart& start,
                    const EvalOptions& options) {
  InspectionEpisode episode(map, start, options.novelty_allowance);
  while (!episode.done() && episode.steps() < options.cap) {
    const ActionSet valid = episode.valid_actions();
    if (valid.empty()) break;
    episode.step(policy.act(episode.state_index(), valid));
  }
  EvalReport report;
  report.anomalies_discovered = episode.anomalies_found();
  report.cumulative_reward = static_cast<double>(episode.total_reward());
  report.steps = episode.steps();
  return report;
}

EvalReport evaluate(const InspectionPolicy& policy, const GridMap& map, Cell start,
                    Direction entry_dir, int cap) {
  return evaluate(policy, map, EpisodeStart{start, entry_dir, {}}, EvalOptions{cap, 10});
}

TrainResult train(const GridMap& map, const TrainSchedule& schedule, const Hyperparams& hp,
                  std::uint64_t seed) {
  hp.validate();
  if (schedule.cycles < 1 || schedule.steps_per_cycle < 1) {
    throw ConfigError("training needs at least one cycle of at least one step");
  }
  if (map.anomaly_count() == 0) throw ConfigError("training map has no anomaly cells");

  const EpisodeStart starts[2] = {task_start(map, Task::RightEdge), task_start(map, Task::LeftEdge)};
  if (valid_actions(starts[0].start, map.extent()).empty()) {
    throw ConfigError("training map leaves no room to move");
  }

  TrainResult result;
  QPolicy& policy = result.policy;
  const std::int64_t total = static_cast<std::int64_t>(schedule.cycles) * schedule.steps_per_cycle;
  policy.meta = {seed, total};
  Rng rng = make_rng(seed, "train");
  std::int64_t global_step = 0;

  for (int cycle = 0; cycle < schedule.cycles; ++cycle) {
    const Task task = TrainSchedule::task_for_cycle(cycle);
    const EpisodeStart& start = starts[task == Task::RightEdge ? 0 : 1];
    int cycle_steps = 0;
    while (cycle_steps < schedule.steps_per_cycle) {
      InspectionEpisode episode(map, start, hp.novelty_allowance);
      while (!episode.done() && episode.steps() < hp.episode_cap &&
             cycle_steps < schedule.steps_per_cycle) {
        const ActionSet valid = episode.valid_actions();
        const int s = episode.state_index();
        Direction a;
        if (uniform_unit(rng) < hp.epsilon(global_step, total)) {
          a = valid.nth(static_cast<int>(uniform_index(rng, static_cast<std::size_t>(valid.size()))));
        } else {
          a = policy.greedy(s, valid);
        }
        const StepResult step = episode.step(a);
        q_update(policy, s, a, step.reward, episode.state_index(), step.done, hp);
        ++global_step;
        ++cycle_steps;
      }
    }
    EvalReport report = evaluate(policy, map, start, EvalOptions{hp.episode_cap, hp.novelty_allowance});
    report.cycle = cycle + 1;
    report.task = task;
    result.reports.push_back(report);
  }
  return result;
}

namespace {

constexpr std::string_view kMagic = "BNMQ";

void append_double(std::string& line, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, ptr);
}

}  // namespace

void write_policy(std::ostream& out, const QPolicy& policy) {
  out << kMagic << QPolicy::kVersion << ' ' << kStateCount << ' ' << kActionCount << ' '
      << policy.meta.seed << ' ' << policy.meta.steps << '\n';
  std::string line;
  const auto values = policy.values();
  for (int s = 0; s < kStateCount; ++s) {
    line.clear();
    for (int a = 0; a < kActionCount; ++a) {
      if (a > 0) line.push_back(' ');
      append_double(line, values[static_cast<std::size_t>(s) * kActionCount + static_cast<std::size_t>(a)]);
    }
    line.push_back('\n');
    out << line;
  }
}

QPolicy read_policy(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(1, "empty policy file");
  std::istringstream header(line);
  std::string magic;
  long long states = 0;
  long long actions = 0;
  QPolicy policy;
  header >> magic >> states >> actions >> policy.meta.seed >> policy.meta.steps;
  if (magic.rfind(kMagic, 0) != 0) throw FormatError(1, "bad magic \"" + magic + "\"");
  if (magic != std::string(kMagic) + std::to_string(QPolicy::kVersion)) {
    throw FormatError(1, "unsupported policy version \"" + magic + "\"");
  }
  if (!header || states != kStateCount || actions != kActionCount) {
    throw FormatError(1, "header must read \"BNMQ1 73728 4 <seed> <steps>\"");
  }

  auto values = policy.values();
  for (int s = 0; s < kStateCount; ++s) {
    const int line_no = s + 2;
    if (!std::getline(in, line)) throw FormatError(line_no, "truncated policy table");
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int a = 0; a < kActionCount; ++a) {
      if (a > 0) {
        if (p == end || *p != ' ') throw FormatError(line_no, "expected 4 values");
        ++p;
      }
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{} || !std::isfinite(v)) throw FormatError(line_no, "bad action value");
      values[static_cast<std::size_t>(s) * kActionCount + static_cast<std::size_t>(a)] = v;
      p = next;
    }
    if (p != end) throw FormatError(line_no, "trailing data after 4 values");
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw FormatError(kStateCount + 2, "unexpected content after the table");
  }
  return policy;
}

void save_policy(const QPolicy& policy, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write policy file " + path.string());
  write_policy(out, policy);
  if (!out) throw std::runtime_error("error writing policy file " + path.string());
}

QPolicy load_policy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open policy file " + path.string());
  return read_policy(in);
}

}  // namespace bnm
