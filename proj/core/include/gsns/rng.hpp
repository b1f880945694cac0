#pragma once

#include <cmath>
#include <cstdint>

namespace gsns::rng {

// splitmix64 finalizer; a strong 64-bit mix used here to hash key tuples.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Stateless hash of (seed, stream, counter); the basis of every random draw,
/// so any (row, column) of a noise grid can be generated independently and in
/// any order while reproducing the serial sequence.
inline std::uint64_t key3(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (stream + 0x632be59bd9b4e019ull));
    h = mix64(h ^ (counter + 0x9e3779b97f4a7c15ull));
    return h;
}

/// Uniform draw in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(key3(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller; u1 is shifted into (0, 1] so the log is finite.
inline double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const std::uint64_t h = key3(seed, stream, counter);
    const std::uint64_t g = mix64(h ^ 0xd1b54a32d192ed03ull);
    const double u1 = (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(g >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// Derives an independent sub-seed (per trajectory, per word, per chain...).
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ mix64(salt + 0xa0761d6478bd642full));
}

}  // namespace gsns::rng
