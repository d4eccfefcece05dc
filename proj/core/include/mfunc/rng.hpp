#pragma once

#include <cstdint>

namespace mfunc {

// Counter-based substream generator, layout v1 (frozen):
// a draw is addressed by (seed, sample index, prime index) and produced by
// cascading the SplitMix64 finalizer over the three words. Streams are
// independent of thread scheduling, so parallel sampling is reproducible.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t substream_word(std::uint64_t seed, std::uint64_t sample, std::uint64_t stream) {
    return splitmix64(splitmix64(splitmix64(seed) ^ sample) ^ stream);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t sample, std::uint64_t stream) {
    return static_cast<double>(substream_word(seed, sample, stream) >> 11) * 0x1.0p-53;
}

}  // namespace rng
}  // namespace mfunc
