#ifndef STBC_RNG_HPP
#define STBC_RNG_HPP

#include <cmath>
#include <cstdint>

namespace stbc {

/// Deterministic counter-derived PRNG. A stream is keyed by (seed, hi, lo);
/// streams keyed differently are independent for simulation purposes, so
/// trial (snr_index, trial_index) can run on any thread and still reproduce
/// bit-identical results.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t hi = 0, uint64_t lo = 0) {
        state_ = mix(seed + 0x9e3779b97f4a7c15ULL);
        state_ = mix(state_ ^ mix(hi + 0xbf58476d1ce4e5b9ULL));
        state_ = mix(state_ ^ mix(lo + 0x94d049bb133111ebULL));
    }

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    uint64_t next_below(uint64_t bound) {
        return static_cast<uint64_t>(next_double() * static_cast<double>(bound)) % bound;
    }

    /// Standard normal via Box-Muller; always consumes two uniforms.
    void next_gaussian_pair(double& g0, double& g1) {
        double u1 = next_double();
        const double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        g0 = r * std::cos(2.0 * M_PI * u2);
        g1 = r * std::sin(2.0 * M_PI * u2);
    }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double g0, g1;
        next_gaussian_pair(g0, g1);
        spare_ = g1;
        have_spare_ = true;
        return g0;
    }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t state_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace stbc

#endif  // STBC_RNG_HPP
