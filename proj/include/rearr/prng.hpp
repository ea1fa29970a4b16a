#ifndef REARR_PRNG_HPP
#define REARR_PRNG_HPP

#include <cstdint>

namespace rearr
{

// SplitMix64 finalizer (Steele, Lea, Flood). Pinned so that seeded sets and
// digit streams reproduce bit-for-bit across platforms.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based: the value at an index depends only on (seed, index).
constexpr std::uint64_t hash_index(std::uint64_t seed, std::uint64_t index)
{ return splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ull)); }

// Uniform in [0, 1) with 53 bits of resolution.
constexpr double unit_from_index(std::uint64_t seed, std::uint64_t index)
{ return static_cast<double>(hash_index(seed, index) >> 11) * 0x1.0p-53; }

} // namespace rearr

#endif // REARR_PRNG_HPP
