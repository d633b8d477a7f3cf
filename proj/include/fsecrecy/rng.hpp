#pragma once

// Deterministic random number generation for the Monte Carlo estimators:
// xoshiro256++ (Blackman & Vigna's public-domain generator) seeded through
// splitmix64, with the standard jump() giving 2^128 disjoint subsequences so
// parallel batches can own non-overlapping streams; plus the variate
// transforms the samplers need (uniform, normal, gamma).

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fsecrecy {

// splitmix64 step; used to expand a 64-bit seed into generator state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class xoshiro256pp {
public:
    explicit xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Advance 2^128 steps: partitions the period into disjoint subsequences
    // (batch k of a parallel run uses k jumps from the seeded state).
    void jump() {
        static constexpr std::uint64_t table[4] = {
            0x180ec6d33cfd0abaull, 0xd5a61266f0c9392cull,
            0xa9582618e03fc9aaull, 0x39abdc4529b1661cull};
        std::uint64_t acc[4] = {0, 0, 0, 0};
        for (std::uint64_t word : table)
            for (int bit = 0; bit < 64; ++bit) {
                if (word & (1ull << bit))
                    for (int i = 0; i < 4; ++i) acc[i] ^= s[i];
                next();
            }
        for (int i = 0; i < 4; ++i) s[i] = acc[i];
    }

    // Uniform on the open interval (0, 1): 53-bit mantissa, half-step offset
    // keeps both endpoints strictly excluded (log() below is always safe).
    double uniform01() {
        return (double(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s[4];
};

// Standard normal via Box-Muller.  No second-value caching: every draw costs
// two uniforms, so the stream position is a pure function of the draw count.
inline double normal_draw(xoshiro256pp& g) {
    const double u1 = g.uniform01();
    const double u2 = g.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

// Gamma(shape alpha, scale 1) via Marsaglia-Tsang squeeze; the alpha < 1
// case boosts from alpha + 1 with the standard u^(1/alpha) factor.
inline double gamma_draw(xoshiro256pp& g, double alpha) {
    if (alpha < 1.0) {
        const double u = g.uniform01();
        return gamma_draw(g, alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal_draw(g);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = g.uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace fsecrecy
