#ifndef ORTHOG_RNG_HPP
#define ORTHOG_RNG_HPP

#include <cmath>
#include <cstdint>

// Self-contained, portable PRNG stack. std::mt19937 would work on one
// platform, but the distributions in <random> are not bit-reproducible
// across standard libraries, and the simulation contract is byte-identical
// output for a given seed anywhere. Everything here is fixed arithmetic.

namespace orthog {

/// SplitMix64; used to expand seeds into generator state.
struct SplitMix64 {
    std::uint64_t x;

    explicit SplitMix64(std::uint64_t seed) : x(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ with fixed sampling recipes:
///  uniform:  53-bit mantissa mapped into the open interval (0,1)
///  normal:   Box-Muller, cosine branch only, exactly 2 uniforms per draw
///  bernoulli/uniform_range/index: inverse transform from one uniform
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ULL;
    }

    /// Independent stream: state expanded from
    /// seed + (stream + 1)·0x9E3779B97F4A7C15 passed through SplitMix64.
    static Xoshiro256pp derived(std::uint64_t seed, std::uint64_t stream) {
        return Xoshiro256pp(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
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

    /// Open interval (0,1); never 0, so logs are safe.
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    double uniform_range(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double prob) { return uniform() < prob; }

    /// Integer in [0, bound); bound ≥ 1.
    int index(int bound) {
        const int i = static_cast<int>(uniform() * bound);
        return i < bound ? i : bound - 1;
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace orthog

#endif
