// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#ifndef RISOPT_RNG_HPP
#define RISOPT_RNG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace risopt {

namespace detail {

/// splitmix64 finalizer; bijective avalanche mix on 64 bits.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Derives an independent 64-bit seed from a master seed and a salt.
/// Used to key nested deterministic structures (grid point -> trial).
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) {
    return detail::mix64(master_seed ^ detail::mix64(salt ^ 0x5851f42d4c957f2dULL));
}

/// xoshiro256++ generator with splitmix64 state expansion.
///
/// Substreams are keyed by (master seed, stream index): each key hashes to a
/// fresh generator state, so trial i's stream is the same no matter which
/// thread runs it or in what order. Normal deviates are produced by a polar
/// Box-Muller transform on the raw 64-bit output, keeping every draw
/// bit-identical across platforms and thread counts.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& word : state_) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t x = z;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            word = x ^ (x >> 31);
        }
    }

    /// Independent stream for trial `stream_index` under `master_seed`.
    static Xoshiro256pp substream(std::uint64_t master_seed, std::uint64_t stream_index) {
        return Xoshiro256pp(derive_seed(master_seed, stream_index));
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

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform phase in [0, 2*pi).
    double uniform_phase() { return 2.0 * std::numbers::pi * uniform(); }

    /// Circularly-symmetric complex Gaussian CN(0, variance): independent
    /// real and imaginary parts of variance/2 each. variance == 0 yields an
    /// exact zero while still consuming two uniforms.
    std::complex<double> complex_normal(double variance) {
        // (0, 1] so the log is always finite
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
        const double theta = uniform_phase();
        const double amplitude = variance > 0.0 ? std::sqrt(-variance * std::log(u1)) : 0.0;
        return {amplitude * std::cos(theta), amplitude * std::sin(theta)};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace risopt

#endif  // RISOPT_RNG_HPP
