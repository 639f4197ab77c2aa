// Seeded splittable PRNG (splitmix64).  Streams are derived from
// (seed, stream index) so parallel and serial runs agree bit-for-bit.

#pragma once

#include <cstdint>

namespace opplab {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return (next() >> 11) * 0x1.0p-53; }

    // Uniform in (-1/2, 1/2).
    double next_centered() { return next_double() - 0.5; }

    // Rademacher +-1.
    int next_sign() { return (next() & 1) ? 1 : -1; }

private:
    std::uint64_t state_;
};

// Independent stream for work item `index` under a master seed.
inline SplitMix64 split_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    mixer.next();
    return mixer;
}

} // namespace opplab
