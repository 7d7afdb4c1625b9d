#include "bnm/estimator_score.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "bnm/errors.hpp"

namespace bnm {

namespace {

// Squared radii are compared exactly in integers: a cell at squared distance D
// lies inside an observation's radius r = clamp(sqrt(D_other) / 2, 1, 10)
// iff 4 * D <= clamp(D_other, 4, 400).
constexpr int kMaxRadiusSq = 100;
constexpr int kMaxOtherSq = 400;

int radius_key(int nearest_other_sq) { return std::clamp(nearest_other_sq, 4, kMaxOtherSq); }

struct Offset {
  int dx;
  int dy;
  int d2;
};

const std::vector<Offset>& ring_offsets() {
  static const std::vector<Offset> offsets = [] {
    std::vector<Offset> v;
    for (int dy = -20; dy <= 20; ++dy) {
      for (int dx = -20; dx <= 20; ++dx) {
        const int d2 = dx * dx + dy * dy;
        if (d2 > 0 && d2 <= kMaxOtherSq) v.push_back({dx, dy, d2});
      }
    }
    std::stable_sort(v.begin(), v.end(), [](const Offset& a, const Offset& b) { return a.d2 < b.d2; });
    return v;
  }();
  return offsets;
}

// -1 unobserved, otherwise the observed label.
std::vector<std::int8_t> observed_labels(std::span<const Observation> observations, Extent bounds) {
  std::vector<std::int8_t> labels(bounds.cell_count(), -1);
  for (const Observation& o : observations) {
    if (!bounds.contains(o.cell)) throw BoundsError("observation outside the grid");
    labels[bounds.index(o.cell)] = o.anomaly() ? 1 : 0;
  }
  return labels;
}

WorldModel estimate_kernel(std::span<const Observation> observations, Extent bounds, bool parallel) {
  WorldModel model{bounds, std::vector<double>(bounds.cell_count(), 0.0)};
  if (observations.empty()) return model;

  const std::vector<std::int8_t> labels = observed_labels(observations, bounds);
  const std::vector<Offset>& offsets = ring_offsets();
  const int width = bounds.width;
  const int height = bounds.height;
  std::vector<int> radius(bounds.cell_count(), 0);

#pragma omp parallel for schedule(static) if (parallel)
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
      if (labels[i] < 0) continue;
      int nearest = kMaxOtherSq;
      for (const Offset& o : offsets) {
        const Cell c{x + o.dx, y + o.dy};
        if (bounds.contains(c) && labels[bounds.index(c)] >= 0) {
          nearest = o.d2;
          break;
        }
      }
      radius[i] = radius_key(nearest);
    }
  }

#pragma omp parallel for schedule(static) if (parallel)
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
      if (labels[i] >= 0) {
        model.estimates[i] = labels[i];
        continue;
      }
      int found = 0;  // squared distance of the nearest observation, 0 = none yet
      bool anomalous = false;
      for (const Offset& o : offsets) {
        if (o.d2 > kMaxRadiusSq || (found != 0 && o.d2 > found)) break;
        const Cell c{x + o.dx, y + o.dy};
        if (!bounds.contains(c)) continue;
        const std::size_t j = bounds.index(c);
        if (labels[j] < 0) continue;
        found = o.d2;
        if (labels[j] == 1 && 4 * o.d2 <= radius[j]) anomalous = true;
      }
      model.estimates[i] = anomalous ? 1.0 : 0.0;
    }
  }
  return model;
}

void check_shapes(const GridMap& truth, const WorldModel& model) {
  if (truth.extent() != model.extent || model.estimates.size() != truth.extent().cell_count()) {
    throw ConfigError("world model and ground truth have different dimensions");
  }
}

double cell_cost(double y, double y_hat, const ScoreParams& p) {
  const double r = y - y_hat;
  if (y_hat < y) return p.w_miss * r * r;
  if (y_hat > y) return p.w_false_alarm * r * r;
  return 0.0;
}

std::vector<int> sample_times(int moves, int stride) {
  if (stride < 1) throw ConfigError("score stride must be at least 1");
  std::vector<int> times;
  for (int t = 0; t <= moves; t += stride) times.push_back(t);
  if (times.back() != moves) times.push_back(moves);
  return times;
}

std::vector<int> anomalies_prefix(const RunRecord& run) {
  std::vector<int> found(run.observations.size(), 0);
  std::vector<bool> seen(run.extent.cell_count(), false);
  int count = 0;
  for (std::size_t t = 0; t < run.observations.size(); ++t) {
    const Observation& o = run.observations[t];
    auto ref = seen[run.extent.index(o.cell)];
    if (!ref) {
      ref = true;
      if (o.anomaly()) ++count;
    }
    found[t] = count;
  }
  return found;
}

}  // namespace

WorldModel estimate(std::span<const Observation> observations, Extent bounds) {
  return estimate_kernel(observations, bounds, true);
}

WorldModel estimate_reference(std::span<const Observation> observations, Extent bounds) {
  WorldModel model{bounds, std::vector<double>(bounds.cell_count(), 0.0)};
  const std::vector<std::int8_t> labels = observed_labels(observations, bounds);
  std::vector<Cell> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) seen.push_back(bounds.cell_at(i));
  }
  auto dist_sq = [](Cell a, Cell b) { return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y); };

  std::vector<int> radius(seen.size());
  for (std::size_t k = 0; k < seen.size(); ++k) {
    int nearest = std::numeric_limits<int>::max();
    for (std::size_t m = 0; m < seen.size(); ++m) {
      if (m != k) nearest = std::min(nearest, dist_sq(seen[k], seen[m]));
    }
    radius[k] = radius_key(nearest == std::numeric_limits<int>::max() ? kMaxOtherSq : std::min(nearest, kMaxOtherSq));
  }

  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) {
      model.estimates[i] = labels[i];
      continue;
    }
    const Cell c = bounds.cell_at(i);
    int best = std::numeric_limits<int>::max();
    for (Cell s : seen) best = std::min(best, dist_sq(c, s));
    bool anomalous = false;
    for (std::size_t k = 0; k < seen.size(); ++k) {
      if (dist_sq(c, seen[k]) == best && labels[bounds.index(seen[k])] == 1 && 4 * best <= radius[k]) {
        anomalous = true;
      }
    }
    model.estimates[i] = anomalous ? 1.0 : 0.0;
  }
  return model;
}

double score_eca(const GridMap& truth, const WorldModel& model, const ScoreParams& params) {
  check_shapes(truth, model);
  const int width = truth.width();
  const int height = truth.height();
  std::vector<double> row_sums(static_cast<std::size_t>(height), 0.0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    double sum = 0.0;
    for (int x = 0; x < width; ++x) {
      sum += cell_cost(truth.anomaly_unchecked({x, y}) ? 1.0 : 0.0, model.at({x, y}), params);
    }
    row_sums[static_cast<std::size_t>(y)] = sum;
  }
  double total = 0.0;
  for (double s : row_sums) total += s;
  return total == 0.0 ? 0.0 : -total / static_cast<double>(truth.extent().cell_count());
}

double score_eca_reference(const GridMap& truth, const WorldModel& model, const ScoreParams& params) {
  check_shapes(truth, model);
  double total = 0.0;
  for (std::size_t i = 0; i < truth.extent().cell_count(); ++i) {
    total += cell_cost(truth.labels()[i], model.estimates[i], params);
  }
  return total == 0.0 ? 0.0 : -total / static_cast<double>(truth.extent().cell_count());
}

std::vector<ScorePoint> score_series(const RunRecord& run, const GridMap& truth,
                                     const ScoreParams& params, int stride) {
  const std::vector<int> times = sample_times(run.moves(), stride);
  const std::vector<int> found = anomalies_prefix(run);
  std::vector<ScorePoint> series(times.size());
  const std::span<const Observation> obs(run.observations);
  const int n = static_cast<int>(times.size());
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n; ++k) {
    const int t = times[static_cast<std::size_t>(k)];
    const WorldModel model = estimate_kernel(obs.first(static_cast<std::size_t>(t) + 1), run.extent, false);
    series[static_cast<std::size_t>(k)] = {t, score_eca_reference(truth, model, params),
                                           found[static_cast<std::size_t>(t)],
                                           run.modes[static_cast<std::size_t>(t)]};
  }
  return series;
}

std::vector<ScorePoint> score_series_reference(const RunRecord& run, const GridMap& truth,
                                               const ScoreParams& params, int stride) {
  std::vector<ScorePoint> series;
  const std::vector<int> found = anomalies_prefix(run);
  const std::span<const Observation> obs(run.observations);
  for (int t : sample_times(run.moves(), stride)) {
    const WorldModel model = estimate_kernel(obs.first(static_cast<std::size_t>(t) + 1), run.extent, false);
    series.push_back({t, score_eca_reference(truth, model, params), found[static_cast<std::size_t>(t)],
                      run.modes[static_cast<std::size_t>(t)]});
  }
  return series;
}

void write_series(std::ostream& out, std::span<const ScorePoint> series) {
  out << "t,score,anomalies_found,mode\n";
  char buf[32];
  for (const ScorePoint& p : series) {
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p.score);
    out << p.t << ',' << std::string_view(buf, static_cast<std::size_t>(end - buf)) << ','
        << p.anomalies_found << ',' << (p.mode == Mode::CloseInspection ? 'C' : 'B') << '\n';
  }
}

}  // namespace bnm
