#pragma once

#include <filesystem>
#include <iosfwd>

#include "bnm/gridworld.hpp"

namespace bnm {

// Map text format:
//   line 1      "W H"
//   lines 2..   H rows of W characters from {0,1}; the first row is y = 0.
// Newline-terminated, no trailing whitespace.

void write_map(std::ostream& out, const GridMap& map);
/// Throws FormatError naming the offending line.
GridMap read_map(std::istream& in);

void save_map(const GridMap& map, const std::filesystem::path& path);
GridMap load_map(const std::filesystem::path& path);

}  // namespace bnm
