#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace bnm {

using Rng = std::mt19937_64;

/// Seed for a named sub-stream of `seed` (e.g. "map", "waypoints", "policy").
/// Streams with different names are decorrelated; the mapping is fixed, so
/// results do not depend on the standard library in use.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

inline Rng make_rng(std::uint64_t seed, std::string_view stream) {
  return Rng(derive_seed(seed, stream));
}

/// Uniform integer in [0, n). Portable replacement for
/// std::uniform_int_distribution, whose output is implementation-defined.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

}  // namespace bnm
