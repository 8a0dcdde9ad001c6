#pragma once

#include <cstdint>

namespace gbp {

// stateless mixing; every random decision is a pure function of (seed, index)
// so trials and edges can be evaluated in any order by any number of workers.

inline std::uint64_t fin64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    return fin64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

inline double unit_double(std::uint64_t bits) {
    return double(bits >> 11) * 0x1.0p-53;
}

// sequential stream for the large-n skip sampler
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(fin64(seed ^ 0x5851f42d4c957f2dULL)) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        return fin64(state);
    }
    double next_unit() { return unit_double(next()); }
};

} // namespace gbp
