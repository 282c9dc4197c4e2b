#pragma once

#include <cmath>
#include <cstdint>

namespace latlab {

// splitmix64. Counter-based substreams: stream(seed, i) seeds an independent
// generator per sample, so draws never depend on evaluation order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // warm up so that small seeds decorrelate
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on [0,1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on (0,1]
    double next_double_pos() { return 1.0 - next_double(); }

    double next_normal() {
        // Box-Muller, one value per call (the pair's partner is discarded;
        // simplicity beats saving one log per two draws here)
        double u1 = next_double_pos();
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::uint64_t state_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (index + 0x632BE59BD9B4E019ULL));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Independent generator for sample `index` of a run keyed by `seed`.
inline Rng substream(std::uint64_t seed, std::uint64_t index) { return Rng(mix_seed(seed, index)); }

}  // namespace latlab
