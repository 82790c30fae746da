#pragma once

#include <cstdint>
#include <string_view>

namespace bockstein {

// SplitMix64, written out so fuzz streams do not depend on a platform generator:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// Bounded draws use rejection on the top of the range, so they are exact and portable.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

/// Seed of trial `offset` in suite `suite`: one SplitMix64 step over seed, an FNV-1a hash of the
/// suite name and the offset, so every trial can be replayed on its own.
inline std::uint64_t trial_seed(std::uint64_t seed, std::string_view suite, std::uint64_t offset) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : suite) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  SplitMix64 g(seed ^ h ^ (offset * 0xD1B54A32D192ED03ULL));
  return g.next();
}

}  // namespace bockstein
