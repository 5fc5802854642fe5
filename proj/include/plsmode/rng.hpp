#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace plsmode {

// splitmix64, used only to key the main generator.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

// Substream key as a pure function of (seed, stream index): serial and
// parallel trial loops consume identical per-trial streams, whatever the
// worker count.
inline std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 outer{seed};
    const std::uint64_t base = outer.next();
    SplitMix64 inner{base ^ (0x9e3779b97f4a7c15ull * (index + 1))};
    return inner.next();
}

// xoshiro256++ (Blackman/Vigna). One instance per Monte Carlo substream.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t key) {
        SplitMix64 sm{key};
        for (auto& word : state_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0, 1]; never returns 0 so log() is safe.
    double uniform01() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform01()));
        const double phi = 2.0 * std::numbers::pi * uniform01();
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    // Circularly symmetric complex Gaussian, E|z|^2 = 1.
    std::complex<double> complex_normal() {
        const double r = std::sqrt(-std::log(uniform01()));
        const double phi = 2.0 * std::numbers::pi * uniform01();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace plsmode
