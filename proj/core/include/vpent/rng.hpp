#pragma once

#include <cstdint>
#include <random>

namespace vpent {

// Seedable, splittable random stream. Child streams derive from the base seed
// and a key via the SplitMix64 finalizer; split(k) does not depend on how much
// the parent has been consumed, so per-trial streams are identical under
// serial and parallel execution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(mix(seed)) {}

    // Deterministic child stream for a given key; does not consume parent state.
    Rng split(std::uint64_t key) const { return Rng(mix(seed_ ^ mix(key + 0x517cc1b727220a95ULL))); }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
        return d(eng_);
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace vpent
