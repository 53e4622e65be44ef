#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace farofangs {

/// SplitMix64 finalizer; used to derive well-separated stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Purpose tags for substreams.
enum class Stream : std::uint64_t {
  kBaselineDraw = 1,
  kSweeten = 2,
  kSynthetic = 3,
  kBench = 4,
};

/// A 64-bit Mersenne Twister with bounded draws that do not depend on the
/// standard library's distribution implementations, so sequences are the
/// same on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent generator for (seed, purpose, index).
  static Rng substream(std::uint64_t seed, Stream purpose,
                       std::uint64_t index = 0) {
    const std::uint64_t s = splitmix64(
        splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(purpose))) ^
        index);
    return Rng(s);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's method).
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m =
        static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace farofangs
