#pragma once

#include <cstdint>

namespace orbitlab {

// Counter-based stream: output depends only on (seed, stream, counter), so a
// Monte Carlo estimate is reproducible regardless of how strata are scheduled
// across threads. splitmix64 finalizer as the bijective mixer.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }
    std::uint64_t state_;
};

struct McParams {
    long samples = 10000;
    std::uint64_t seed = 1;
    int threads = 1;
};

} // namespace orbitlab
