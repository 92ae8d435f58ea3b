#pragma once

#include <cstdint>
#include <random>

namespace epsnet {

// Every stochastic step draws from its own stream derived from the user seed:
//   stream_seed = splitmix64(seed ^ splitmix64(stream + 1))
// and chunked work (sampling) further derives one seed per chunk index.
enum class Stream : std::uint64_t {
  kSample = 1,
  kNetOrder = 2,
  kPairs = 3,
  kBasePoints = 4,
  kBallMeasure = 5,
  kSubset = 6,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
  return derive_seed(seed, static_cast<std::uint64_t>(stream));
}

using Rng = std::mt19937_64;

}  // namespace epsnet
