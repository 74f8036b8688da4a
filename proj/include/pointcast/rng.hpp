#ifndef POINTCAST_RNG_HPP
#define POINTCAST_RNG_HPP

#include <cmath>
#include <cstdint>

// Counter-based pseudo-random generation. Every draw is a pure function of
// (seed, counter), so noise realizations are reproducible bit-for-bit across
// runs and independent of evaluation order or threading.

namespace pointcast::rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stateless hash of a (seed, counter) pair into one 64-bit word.
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(seed ^ splitmix64(counter * kGamma + 1u));
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

struct GaussPair {
    double z0;
    double z1;
};

// Standard normal pair via Box-Muller, a pure function of (seed, counter).
inline GaussPair gaussian_pair(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t a = mix(seed, 2 * counter);
    const std::uint64_t b = mix(seed, 2 * counter + 1);
    const double u1 = 1.0 - uniform01(a);  // (0, 1], keeps log finite
    const double u2 = uniform01(b);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

// Sequential stream for synthetic data generation. Deterministic given the
// seed and independent of platform, unlike std:: distributions.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(splitmix64(seed ^ kGamma)) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    double next_uniform() { return uniform01(next_u64()); }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace pointcast::rng

#endif
