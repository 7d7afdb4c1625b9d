#include "bnm/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace bnm {

namespace {

using Rgb = std::array<unsigned char, 3>;

void write_ppm(const std::filesystem::path& path, Extent extent, const std::vector<Rgb>& pixels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write image " + path.string());
  out << "P6\n" << extent.width << ' ' << extent.height << "\n255\n";
  for (const Rgb& p : pixels) out.write(reinterpret_cast<const char*>(p.data()), 3);
  if (!out) throw std::runtime_error("error writing image " + path.string());
}

}  // namespace

void render_trajectory(const GridMap& map, const RunRecord& run, const std::filesystem::path& path) {
  const Extent extent = map.extent();
  std::vector<Rgb> pixels(extent.cell_count(), Rgb{255, 255, 255});
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (map.labels()[i]) pixels[i] = {150, 20, 20};
  }
  for (std::size_t t = 0; t < run.observations.size(); ++t) {
    const std::size_t i = extent.index(run.observations[t].cell);
    pixels[i] = run.modes[t] == Mode::CloseInspection ? Rgb{255, 140, 0} : Rgb{40, 90, 220};
  }
  write_ppm(path, extent, pixels);
}

void render_estimate(const WorldModel& model, const std::filesystem::path& path) {
  std::vector<Rgb> pixels(model.extent.cell_count());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const double v = std::clamp(model.estimates[i], 0.0, 1.0);
    const auto level = static_cast<unsigned char>(std::lround(255.0 * (1.0 - v)));
    pixels[i] = {level, level, level};
  }
  write_ppm(path, model.extent, pixels);
}

}  // namespace bnm
