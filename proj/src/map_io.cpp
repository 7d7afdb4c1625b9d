#include "bnm/map_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "bnm/errors.hpp"

namespace bnm {

namespace {

bool parse_positive(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && out > 0;
}

}  // namespace

void write_map(std::ostream& out, const GridMap& map) {
  out << map.width() << ' ' << map.height() << '\n';
  std::string row(static_cast<std::size_t>(map.width()), '0');
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) row[static_cast<std::size_t>(x)] = map.anomaly_unchecked({x, y}) ? '1' : '0';
    out << row << '\n';
  }
}

GridMap read_map(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw FormatError(1, "missing \"W H\" header");
  const auto space = line.find(' ');
  int width = 0;
  int height = 0;
  if (space == std::string::npos ||
      !parse_positive(std::string_view(line).substr(0, space), width) ||
      !parse_positive(std::string_view(line).substr(space + 1), height)) {
    throw FormatError(1, "header must be two positive integers \"W H\", got \"" + line + "\"");
  }

  std::vector<std::uint8_t> labels;
  labels.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    const int line_no = y + 2;
    if (!std::getline(in, line)) {
      throw FormatError(line_no, "expected " + std::to_string(height) + " rows, found " + std::to_string(y));
    }
    if (line.size() != static_cast<std::size_t>(width)) {
      throw FormatError(line_no, "expected " + std::to_string(width) + " columns, got " +
                                     std::to_string(line.size()));
    }
    for (std::size_t x = 0; x < line.size(); ++x) {
      const char c = line[x];
      if (c != '0' && c != '1') {
        throw FormatError(line_no, "label '" + std::string(1, c) + "' at column " +
                                       std::to_string(x) + " is not 0 or 1");
      }
      labels.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  }
  int line_no = height + 2;
  while (std::getline(in, line)) {
    if (!line.empty()) throw FormatError(line_no, "unexpected content after the last row");
    ++line_no;
  }
  return GridMap(width, height, std::move(labels));
}

void save_map(const GridMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write map file " + path.string());
  write_map(out, map);
  if (!out) throw std::runtime_error("error writing map file " + path.string());
}

GridMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file " + path.string());
  try {
    return read_map(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace bnm
