#pragma once

// Deterministic, platform-independent randomness for the verification
// harness. std:: distributions are implementation-defined, so doubles are
// derived from raw splitmix64 bits directly.

#include <cmath>
#include <cstdint>
#include <vector>

namespace cimred {

class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi]
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // integer in [lo, hi] inclusive
    int64_t uniform_int(int64_t lo, int64_t hi) {
        return lo + int64_t(next() % uint64_t(hi - lo + 1));
    }

private:
    uint64_t state_;
};

// log u_i uniform in [-1, 1], i.e. u_i log-uniform in [1/e, e].
inline std::vector<double> sample_log_point(SplitMix64& rng, int n) {
    std::vector<double> logs(n);
    for (auto& l : logs) l = rng.uniform(-1.0, 1.0);
    return logs;
}

} // namespace cimred
