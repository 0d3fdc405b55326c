#pragma once

#include <cstdint>

namespace discourse {

// Deterministic splitmix64 stream. The engine never uses std:: distributions,
// so a run is reproducible for a given build regardless of platform stdlib.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + next_double() * (hi - lo);
    }

    // Uniform in [0, n). Rejection sampling keeps the draw unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

    bool chance(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

// Purpose tags for sub-streams derived from the master seed. Keeping each
// consumer on its own stream makes draw order independent of scheduling.
enum class StreamId : std::uint64_t {
    population = 1,
    graph = 2,
    quirk = 3,
    stub_generation = 4,
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, StreamId purpose, std::uint64_t index = 0) {
    std::uint64_t s = mix64(master ^ (static_cast<std::uint64_t>(purpose) * 0xD6E8FEB86659FD93ull));
    return mix64(s ^ (index * 0xA0761D6478BD642Full));
}

inline Rng derive_rng(std::uint64_t master, StreamId purpose, std::uint64_t index = 0) {
    return Rng(derive_seed(master, purpose, index));
}

} // namespace discourse
