#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace predsearch {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic xoshiro256** stream. std::mt19937 plus the standard
/// distributions would not give reproducible values across standard
/// library implementations, so sampling is done by hand here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    int next_int(int bound) { return static_cast<int>(next_below(static_cast<std::uint64_t>(bound))); }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    /// Exp(1) variate.
    double exponential() {
        double u;
        do { u = next_double(); } while (u <= 0.0);
        return -std::log(u);
    }

    /// Standard normal via Box-Muller (no rejection, fully deterministic).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do { u1 = next_double(); } while (u1 <= 0.0);
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * std::numbers::pi * u2);
        have_spare_ = true;
        return radius * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// N(mean, sigma^2) conditioned on [lo, hi], sampled by rejection.
    double truncated_normal(double mean, double sigma, double lo, double hi) {
        if (sigma <= 0.0) return mean;
        for (;;) {
            const double x = mean + sigma * normal();
            if (x >= lo && x <= hi) return x;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Counter-based seed split: the derived stream depends only on the
/// inputs, never on scheduling order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t trial) {
    std::uint64_t s = base;
    detail::splitmix64(s);
    s ^= 0x632be59bd9b4e019ULL + cell;
    detail::splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL + trial;
    return detail::splitmix64(s);
}

}  // namespace predsearch
