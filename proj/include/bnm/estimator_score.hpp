#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "bnm/gridworld.hpp"
#include "bnm/run_record.hpp"

namespace bnm {

/// Estimated anomaly field, one value in [0, 1] per cell.
struct WorldModel {
  Extent extent;
  std::vector<double> estimates;

  double at(Cell c) const { return estimates[extent.index(c)]; }
};

/// Adaptive disk estimator.
///
/// Observed cells keep their label. Each observation gets a radius of half the
/// distance to its nearest other observed cell, clamped to [1, 10]. An
/// unobserved cell takes the label of its nearest observation when it lies
/// inside that observation's radius, and 0 otherwise. When several
/// observations tie for nearest, the cell is anomalous if any covering one is.
///
/// Parallel over cells; the result does not depend on the thread count.
WorldModel estimate(std::span<const Observation> observations, Extent bounds);

/// Serial brute-force evaluation of the same rule, O(cells x observations).
WorldModel estimate_reference(std::span<const Observation> observations, Extent bounds);

struct ScoreParams {
  double w_miss = 100.0;        // weight on y_hat < y (missed anomaly)
  double w_false_alarm = 1.0;   // weight on y_hat > y
};

/// Negative asymmetric mean squared error, always <= 0. Throws ConfigError on
/// mismatched dimensions.
double score_eca(const GridMap& truth, const WorldModel& model, const ScoreParams& params);

/// Serial single-accumulator version used as a test reference.
double score_eca_reference(const GridMap& truth, const WorldModel& model, const ScoreParams& params);

struct ScorePoint {
  int t = 0;
  double score = 0.0;
  int anomalies_found = 0;
  Mode mode = Mode::Boustrophedon;
};

/// Score at t = 0, stride, 2*stride, ... and always at the final timestep,
/// each from the observations up to and including t. Parallel over sample
/// points. Throws ConfigError when stride < 1.
std::vector<ScorePoint> score_series(const RunRecord& run, const GridMap& truth,
                                     const ScoreParams& params, int stride);

/// Serial reference for score_series.
std::vector<ScorePoint> score_series_reference(const RunRecord& run, const GridMap& truth,
                                               const ScoreParams& params, int stride);

/// Header "t,score,anomalies_found,mode", one row per sample.
void write_series(std::ostream& out, std::span<const ScorePoint> series);

}  // namespace bnm
