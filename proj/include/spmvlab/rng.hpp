#pragma once

#include <cmath>
#include <cstdint>

namespace spmvlab {

// Splittable counter-based PRNG (splitmix64 finalizer). Every seeded
// operation in the project draws from this generator rather than the
// standard <random> distributions, whose sequences differ between
// standard library implementations. Not cryptographic.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream derived from (seed, key); generation keyed this
    // way is order-independent across rows/trees/workers.
    static Rng stream(std::uint64_t seed, std::uint64_t key) {
        return Rng(finalize(seed + 0x9E3779B97F4A7C15ull * (key + 1)));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return finalize(state_);
    }

    // Uniform in [0, n). Modulo bias is irrelevant at our scales.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    // Uniform integer in [lo, hi).
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo)));
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; second value of each pair is cached.
    double normal(double mean = 0.0, double stddev = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.28318530717958647692 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return mean + stddev * (r * std::cos(a));
    }

private:
    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace spmvlab
