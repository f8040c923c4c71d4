#ifndef AEQTS_RNG_HPP
#define AEQTS_RNG_HPP

#include <cassert>
#include <cstdint>
#include <random>

namespace aeqts {

// Seed derivation for fanning one master seed out to independent trial
// streams: SplitMix64 finalizer applied to (master XOR golden * index).
// These constants are part of the reproducibility contract and must never
// change; published results are keyed to them.
inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ (kGoldenGamma * index));
}

// Single random stream backing one solver run.
//
// The generator identity is likewise fixed for the lifetime of the project:
// std::mt19937_64 seeded directly with the 64-bit seed, doubles taken as the
// top 53 bits of one output scaled to [0,1), bounded integers by modulo
// rejection. next_double consumes exactly one engine output per call, which
// is what makes "measurement takes exactly K draws" a testable contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound), bound > 0. Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        assert(bound > 0);
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        assert(lo <= hi);
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace aeqts

#endif  // AEQTS_RNG_HPP
