#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "bnm/gridworld.hpp"
#include "bnm/inspection_mdp.hpp"
#include "bnm/rng.hpp"

namespace bnm {

/// Close-inspection policy: chooses a move for an encoded state.
class InspectionPolicy {
 public:
  virtual ~InspectionPolicy() = default;
  /// `valid` is never empty.
  virtual Direction act(int state, ActionSet valid) const = 0;
};

struct PolicyMeta {
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  friend bool operator==(const PolicyMeta&, const PolicyMeta&) = default;
};

/// Tabular action values over the full inspection state space.
class QPolicy final : public InspectionPolicy {
 public:
  static constexpr int kVersion = 1;

  QPolicy();

  double q(int state, Direction a) const { return values_[slot(state, a)]; }
  void set_q(int state, Direction a, double v) { values_[slot(state, a)] = v; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Highest-valued action in `valid`; ties go to the lowest Direction code.
  Direction greedy(int state, ActionSet valid) const;
  double max_q(int state, ActionSet valid) const;

  Direction act(int state, ActionSet valid) const override { return greedy(state, valid); }

  PolicyMeta meta;

  friend bool operator==(const QPolicy& a, const QPolicy& b) {
    return a.meta == b.meta && a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;

  static std::size_t slot(int state, Direction a) {
    return static_cast<std::size_t>(state) * kActionCount + static_cast<std::size_t>(code(a));
  }
};

/// Uniform choice among valid actions.
class RandomPolicy final : public InspectionPolicy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(make_rng(seed, "random-policy")) {}
  Direction act(int, ActionSet valid) const override {
    return valid.nth(static_cast<int>(uniform_index(rng_, static_cast<std::size_t>(valid.size()))));
  }

 private:
  mutable Rng rng_;
};

struct Hyperparams {
  double alpha = 0.1;
  double gamma = 0.99;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.8;  // of all training steps
  int episode_cap = 400;
  int novelty_allowance = 10;

  /// Throws ConfigError when a value is outside its range.
  void validate() const;
  double epsilon(std::int64_t step, std::int64_t total_steps) const;
};

/// Temporal-difference update of q(s, a). The bootstrap maximum runs over
/// the actions that are valid in `s_next`. Throws NumericError on non-finite
/// input and EncodingError on an index out of range.
void q_update(QPolicy& policy, int s, Direction a, double r, int s_next, bool terminal,
              const Hyperparams& hp);

/// Start of a close-inspection episode: the anomaly cell where inspection
/// begins, the horizontal direction the robot arrived from, and the cells it
/// already visited on the way in.
struct EpisodeStart {
  Cell start;
  Direction entry_dir = Direction::East;
  std::vector<Cell> approach;
};

enum class Task : std::uint8_t { RightEdge = 1, LeftEdge = 2 };

/// Task-1 starts on the right edge of the largest anomaly cluster, entered
/// westwards along its middle row; Task-2 on the left edge, entered eastwards.
/// Throws ConfigError on an anomaly-free map.
EpisodeStart task_start(const GridMap& map, Task task);

struct StepResult {
  int reward = 0;
  bool new_anomaly = false;
  bool done = false;  // novelty allowance ran out
};

/// Close-inspection episode on a ground-truth map, used for training and
/// evaluation. Terminates when no new anomaly was found in the novelty window.
class InspectionEpisode {
 public:
  InspectionEpisode(const GridMap& map, const EpisodeStart& start, int novelty_allowance);

  const InspectionState& state() const { return state_; }
  int state_index() const { return bnm::state_index(state_); }
  ActionSet valid_actions() const { return bnm::valid_actions(position_, map_->extent()); }
  Cell position() const { return position_; }
  bool done() const { return done_; }
  int steps() const { return steps_; }
  int anomalies_found() const { return anomalies_found_; }
  std::int64_t total_reward() const { return total_reward_; }

  StepResult step(Direction action);

 private:
  const GridMap* map_;
  BeliefGrid belief_;
  GrazingTracker tracker_;
  InspectionState state_;
  Cell position_;
  int novelty_allowance_;
  std::vector<std::uint8_t> novel_;  // per timestep since the inspection started
  int steps_ = 0;
  int anomalies_found_ = 0;
  std::int64_t total_reward_ = 0;
  bool done_ = false;
};

struct TrainSchedule {
  int cycles = 5;
  int steps_per_cycle = 50000;

  /// Task of cycle `i`; Task-1 first, strictly alternating.
  static Task task_for_cycle(int i) { return i % 2 == 0 ? Task::RightEdge : Task::LeftEdge; }
};

struct EvalReport {
  int cycle = 0;
  Task task = Task::RightEdge;
  int anomalies_discovered = 0;
  double cumulative_reward = 0.0;
  int steps = 0;
};

struct EvalOptions {
  int cap = 400;
  int novelty_allowance = 10;
};

/// Greedy rollout; side-effect free on the policy.
EvalReport evaluate(const InspectionPolicy& policy, const GridMap& map, const EpisodeStart& start,
                    const EvalOptions& options);

EvalReport evaluate(const InspectionPolicy& policy, const GridMap& map, Cell start,
                    Direction entry_dir, int cap);

struct TrainResult {
  QPolicy policy;
  std::vector<EvalReport> reports;  // one per cycle, on that cycle's task
};

/// Epsilon-greedy Q-learning on the alternating two-task curriculum.
/// Fully determined by its arguments.
TrainResult train(const GridMap& map, const TrainSchedule& schedule, const Hyperparams& hp,
                  std::uint64_t seed);

// Policy file: "BNMQ1 <states> <actions> <seed> <steps>", then one line per
// state with its action values.
void write_policy(std::ostream& out, const QPolicy& policy);
QPolicy read_policy(std::istream& in);
void save_policy(const QPolicy& policy, const std::filesystem::path& path);
QPolicy load_policy(const std::filesystem::path& path);

}  // namespace bnm
