#pragma once

// Deterministic, platform-stable RNG: splitmix64 seeding + xoshiro256**,
// with independent streams derived from (seed, stream_id) so that blocked
// computations give identical results for any worker count.

#include <cstdint>

namespace hdisc {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256SS {
  public:
    explicit Xoshiro256SS(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& si : s_) si = sm.next();
    }
    static Xoshiro256SS stream(std::uint64_t seed, std::uint64_t stream_id) {
        SplitMix64 sm(seed);
        std::uint64_t base = sm.next();
        return Xoshiro256SS(base ^ (0xd1342543de82ef95ULL * (stream_id + 1)));
    }
    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }
    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace hdisc
