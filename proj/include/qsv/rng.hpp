#ifndef QSV_RNG_HPP
#define QSV_RNG_HPP

#include <cstdint>

namespace qsv {

// Counter-based randomness: every variate is a pure function of
// (seed, trial, draw), so any parallel partition of the trial range
// reproduces the same stream bit for bit.

// splitmix64 finalizer (Steele/Lea/Vigna avalanche constants).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw) {
    std::uint64_t z = mix64(seed + 0x9e3779b97f4a7c15ULL);
    z = mix64(z ^ (trial + 0xd1b54a32d192ed03ULL));
    z = mix64(z ^ (draw + 0x8cb92ba72f3d8dd7ULL));
    return z;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw) {
    return static_cast<double>(counter_word(seed, trial, draw) >> 11) * 0x1.0p-53;
}

}  // namespace qsv

#endif
