#pragma once

#include <filesystem>

#include "bnm/estimator_score.hpp"
#include "bnm/gridworld.hpp"
#include "bnm/run_record.hpp"

namespace bnm {

// Binary PPM (P6) images, one pixel per cell.

/// Ground truth with the path on top: sweep cells blue, close-inspection
/// cells orange, anomalies dark red, background white.
void render_trajectory(const GridMap& map, const RunRecord& run, const std::filesystem::path& path);

/// Estimated field in gray levels, white = 0 and black = 1.
void render_estimate(const WorldModel& model, const std::filesystem::path& path);

}  // namespace bnm
