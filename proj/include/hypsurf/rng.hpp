#pragma once

#include <cstdint>
#include <random>

namespace hypsurf {

/// Seeded generator with a platform-independent mapping to [0, 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Stream `index` of a master seed; used to give every trial or chunk its
    /// own reproducible sequence regardless of scheduling.
    static Rng stream(std::uint64_t master, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        return Rng(seq);
    }

    /// Independent 64-bit seed for sub-task `index` of a master seed.
    static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
        std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    explicit Rng(std::seed_seq& seq) : engine_(seq) {}

    std::mt19937_64 engine_;
};

}  // namespace hypsurf
