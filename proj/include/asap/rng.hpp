#pragma once

#include <cstdint>
#include <random>

namespace asap {

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
// std::uniform_real_distribution is not pinned by the standard; this
// mapping is, which is what makes runs byte-reproducible.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Derives independent per-component seeds from one run seed (splitmix64).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace asap
