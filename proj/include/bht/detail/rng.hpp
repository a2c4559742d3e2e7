#pragma once

#include <cstdint>

namespace bht::detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Counter-based stream: value k of stream `seed` is splitmix64(seed + k*golden).
inline std::uint64_t stream_value(std::uint64_t seed, std::uint64_t k) {
    return splitmix64(seed + k * 0x9e3779b97f4a7c15ull);
}

struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() { return splitmix64(state++); }
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace bht::detail
