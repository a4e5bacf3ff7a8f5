#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace phsf {

/// SplitMix64, used only to expand a user seed into generator state.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ with splitmix-expanded seeding. Chosen over the standard
/// library engines because its stream is identical on every platform, which
/// the bit-exact reproducibility contract relies on.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]; never 0 so it is safe under log().
    double uniform_pos() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

/// Standard normal draws via Box-Muller on a Xoshiro256pp stream. Each pair
/// of uniforms yields two normals; draws are handed out in generation order.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(rng_.uniform_pos()));
        const double theta = 2.0 * std::numbers::pi * rng_.uniform();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Fills out[0..n) with independent standard normals in index order.
    void fill(double* out, long n) {
        for (long i = 0; i < n; ++i) out[i] = next();
    }

private:
    Xoshiro256pp rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Seed for replica r of an ensemble rooted at base_seed.
inline std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t replica_index) {
    return base_seed ^ replica_index;
}

} // namespace phsf
