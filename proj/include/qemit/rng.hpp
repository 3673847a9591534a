#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qemit::rng {

// splitmix64, used to derive independent stream seeds from (seed, index)
// so that parallel sweeps are deterministic regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One deterministic random stream. Draws are identical for identical
// (seed, stream) on any platform: mt19937_64 is fully specified and the
// uniform/normal maps below avoid implementation-defined distributions.
class Stream {
public:
    explicit Stream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)),
                          static_cast<std::uint32_t>(splitmix64(s) >> 32),
                          static_cast<std::uint32_t>(splitmix64(s)),
                          static_cast<std::uint32_t>(splitmix64(s) >> 32)};
        engine_.seed(seq);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1], safe as a log argument.
    double uniform_positive() { return 1.0 - uniform(); }

    // Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_positive();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    // Exponential with unit mean.
    double exponential() { return -std::log(uniform_positive()); }

    // Poisson: inversion for small mean, normal approximation above.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 30.0) {
            const double limit = std::exp(-mean);
            double prod = 1.0;
            std::uint64_t k = 0;
            do {
                ++k;
                prod *= uniform_positive();
            } while (prod > limit);
            return k - 1;
        }
        const double x = mean + std::sqrt(mean) * normal();
        return x < 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(x));
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qemit::rng
