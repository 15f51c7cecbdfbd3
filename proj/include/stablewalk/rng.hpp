// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Random number streams for the Monte Carlo engine.
//
// Every trial owns an independent RngState whose seed is a pure function of
// (master_seed, trial_index). Nothing here depends on thread identity or
// scheduling, which is what makes batch results independent of the worker
// count.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace stablewalk {

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based seed derivation: seed_i = split(master, i).
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master + 0x9e3779b97f4a7c15ULL) ^ mix64(index * 0xd1b54a32d192ed03ULL + 1));
}

inline constexpr const char* kSeedDerivationTag = "splitmix64(master,trial)->xoshiro256++";

/// xoshiro256++ generator. Satisfies UniformRandomBitGenerator.
class RngState {
  public:
    using result_type = std::uint64_t;

    constexpr explicit RngState(std::uint64_t seed = 0) noexcept {
        std::uint64_t z = seed;
        for (auto& w : s_) {
            z += 0x9e3779b97f4a7c15ULL;
            w = mix64(z);
        }
    }

    static constexpr RngState for_trial(std::uint64_t master, std::uint64_t index) noexcept {
        return RngState(split_seed(master, index));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept {
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

    friend constexpr bool operator==(const RngState&, const RngState&) = default;

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> s_{};
};

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(RngState& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on the open interval (0, 1); never returns 0 or 1.
inline double uniform_open(RngState& rng) noexcept {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Unit exponential via inversion.
inline double exponential(RngState& rng) noexcept {
    return -std::log(uniform_open(rng));
}

namespace detail {

// 128-layer ziggurat for the standard normal (Marsaglia & Tsang layout,
// Doornik's tail handling).
struct ZigguratTables {
    static constexpr int kLayers = 128;
    static constexpr double kR = 3.442619855899;
    static constexpr double kV = 9.91256303526217e-3;
    std::array<double, kLayers + 1> x{};
    std::array<double, kLayers> ratio{};

    ZigguratTables() noexcept {
        double f = std::exp(-0.5 * kR * kR);
        x[0] = kV / f;
        x[1] = kR;
        x[kLayers] = 0.0;
        for (int i = 2; i < kLayers; ++i) {
            x[i] = std::sqrt(-2.0 * std::log(kV / x[i - 1] + f));
            f = std::exp(-0.5 * x[i] * x[i]);
        }
        for (int i = 0; i < kLayers; ++i) ratio[i] = x[i + 1] / x[i];
    }
};

inline const ZigguratTables kZiggurat{};

double normal_slow_path(RngState& rng, int layer, double u) noexcept;

}  // namespace detail

/// Standard normal variate.
inline double standard_normal(RngState& rng) noexcept {
    const std::uint64_t bits = rng();
    const int layer = static_cast<int>(bits & 0x7f);
    const double u = 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
    if (std::fabs(u) < detail::kZiggurat.ratio[layer]) return u * detail::kZiggurat.x[layer];
    return detail::normal_slow_path(rng, layer, u);
}

/// Standard Cauchy variate by the ratio method on the upper half disc.
/// No transcendental calls on the fast path.
inline double standard_cauchy(RngState& rng) noexcept {
    for (;;) {
        const double u = 2.0 * uniform01(rng) - 1.0;
        const double v = uniform_open(rng);
        if (u * u + v * v <= 1.0) return u / v;
    }
}

}  // namespace stablewalk
