#pragma once
/*
 * Deterministic splittable pseudo-random generator (splitmix64 core).
 * Every randomized routine takes an explicit Rng so runs are reproducible
 * from a single seed; independent streams are derived with split().
 */

#include <cstdint>

namespace trunclin {

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform value in [0, bound); bound > 0 (modulo bias is negligible for
    // the word-sized bounds used here and keeps the stream platform-stable)
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

    // derived independent stream; tag distinguishes siblings
    Rng split(std::uint64_t tag)
    {
        Rng child(state_ ^ (0x8d9dd0af0a7e4a8dULL * (tag + 1)));
        child.next_u64();
        return child;
    }

private:
    std::uint64_t state_;
};

} // namespace trunclin
