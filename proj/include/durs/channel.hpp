#pragma once

#include <cstdint>
#include <cmath>

#include "durs/system.hpp"

namespace durs {

// Squared fading magnitudes |h_km|^2, unit-mean exponential under Rayleigh fading.
struct ChannelSample {
    double g_ia = 0, g_ib = 0, g_ja = 0, g_jb = 0;

    double ga(Rrh k) const { return k == Rrh::i ? g_ia : g_ja; }
    double gb(Rrh k) const { return k == Rrh::i ? g_ib : g_jb; }
};

namespace detail {

// splitmix64 finalizer; full-avalanche mix of a 64-bit counter word.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t word) {
    // 53 high bits -> [0,1)
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Counter-based stream: the draw is a pure function of (seed, index, component),
// so any partition of the index range over workers reproduces the same values.
inline double exp_draw(std::uint64_t seed, std::uint64_t index, std::uint32_t component) {
    std::uint64_t w = detail::mix64(seed ^ detail::mix64(index * 4ull + component));
    double u = detail::uniform01(w);
    return -std::log1p(-u);
}

inline ChannelSample channel_at(std::uint64_t seed, std::uint64_t index) {
    return {exp_draw(seed, index, 0), exp_draw(seed, index, 1), exp_draw(seed, index, 2),
            exp_draw(seed, index, 3)};
}

// Stateful view of the counter stream for sequential use.
class ChannelSampler {
  public:
    explicit ChannelSampler(std::uint64_t seed, std::uint64_t start = 0)
        : seed_(seed), next_(start) {}

    ChannelSample next() { return channel_at(seed_, next_++); }
    std::uint64_t position() const { return next_; }
    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t next_;
};

}  // namespace durs
