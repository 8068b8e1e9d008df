#pragma once

#include <cstdint>
#include <cmath>

namespace qfi {

// Counter-derived pseudo-random generator built on the splitmix64 finalizer.
// Streams are keyed by (seed, a, b, c); two streams with different keys are
// statistically independent, so work can be sharded by index without any
// cross-thread RNG state. All outputs are reproducible bit-for-bit for a
// given key regardless of platform word order or thread count.
class SplitRng {
  public:
    explicit SplitRng(std::uint64_t key) : state_(key) {}

    // Key a stream from a seed plus up to three stream coordinates.
    static SplitRng derive(std::uint64_t seed, std::uint64_t a,
                           std::uint64_t b = 0, std::uint64_t c = 0) {
        std::uint64_t k = mix(seed + kGamma);
        k = mix(k ^ (a * 0xD1342543DE82EF95ULL + 0x9E6D62D06F6A6A6BULL));
        k = mix(k ^ (b * 0xDABA0B6EB09322DBULL + 0x2545F4914F6CDD1DULL));
        k = mix(k ^ (c * 0x94D049BB133111EBULL + 0xBF58476D1CE4E5B9ULL));
        return SplitRng(k);
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer on [0, n), n > 0. Lemire multiply-shift; the modulo
    // bias is < 2^-32 for the range sizes used here (< 2^20).
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform angle on [0, 2*pi).
    double next_angle() { return next_double() * 6.283185307179586476925286766559; }

    // Gaussian via Box-Muller; consumes exactly two draws.
    double next_gaussian(double sigma) {
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        return sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

// Stream tags keeping independent uses of the same seed decorrelated.
enum RngStream : std::uint64_t {
    kStreamSample = 1,   // ensemble sampling, coordinate b = record index
    kStreamInit = 2,     // population init, coordinate b = slot index
    kStreamMutate = 3,   // mutation, coordinates b = generation, c = slot
};

}  // namespace qfi
