#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace crn {

using Rng = std::mt19937_64;

// Stream purposes mixed into every derived seed so that clutter, target
// phases and agent exploration never share a generator.
enum class Stream : std::uint64_t {
  clutter = 1,
  target_phase = 2,
  agent = 3,
  test = 4,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Hashes an ordered tuple of counters into a 64-bit seed.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys);

/// Generator for the stream addressed by (purpose, keys...).
Rng make_stream(Stream purpose, std::initializer_list<std::uint64_t> keys);

}  // namespace crn
