#pragma once

#include <cmath>
#include <cstdint>

namespace isorec {

// Finalizer used both to hash stream keys and to advance the generator.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// splitmix64 over a private counter. Streams keyed by different values are
// effectively independent, so work can be scheduled in any order.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1), safe under log()
    double next_open_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// One substream per (seed, replicate) pair. All draws for a replicate come
// from its own stream in a fixed call order, so results do not depend on
// how replicates are distributed over threads.
class NoiseStream {
  public:
    NoiseStream(std::uint64_t seed, std::uint64_t replicate)
        : rng_(mix64(mix64(seed) ^ mix64(replicate ^ 0x5851F42D4C957F2DULL))) {}

    // Box-Muller pair, second deviate cached
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng_.next_open_unit();
        const double u2 = rng_.next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double uniform_pm1() { return 2.0 * rng_.next_unit() - 1.0; }

    // standard Student-t via a normal over an independent chi-square
    double student_t(double df) {
        const double z = normal();
        const double chi2 = 2.0 * gamma_variate(0.5 * df);
        return z / std::sqrt(chi2 / df);
    }

  private:
    // Marsaglia-Tsang squeeze for shape >= 1, boosted for shape < 1
    double gamma_variate(double shape) {
        if (shape < 1.0) {
            const double u = rng_.next_open_unit();
            return gamma_variate(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            const double x = normal();
            const double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            const double v = t * t * t;
            const double u = rng_.next_open_unit();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    SplitMix64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace isorec
