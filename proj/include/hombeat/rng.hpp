#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hombeat {

// SplitMix64 finalizer; used to derive independent sub-seeds from
// (seed, index) pairs so parallel work is schedule-independent.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + 0x9e3779b97f4a7c15ull * (index + 1));
}

// PCG-XSH-RR 64/32 with stream selection. Self-contained so sampled batches
// are bit-reproducible across platforms and standard libraries.
class Pcg32 {
public:
    Pcg32(std::uint64_t seed, std::uint64_t stream) : inc_((stream << 1u) | 1u) {
        next();
        state_ += seed;
        next();
    }

    std::uint32_t next() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ull + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    // Uniform on the open interval (0, 1).
    double uniform01() { return (static_cast<double>(next()) + 0.5) * 0x1p-32; }

    // Standard normal via Box-Muller (single draw; the conjugate value is
    // discarded to keep the per-trial draw count fixed).
    double standard_normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_;
};

}  // namespace hombeat
