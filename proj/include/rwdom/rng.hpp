#pragma once

#include <cstdint>
#include <limits>

namespace rwdom {

__extension__ using uint128 = unsigned __int128;

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Key of the walk stream owned by one (node, replicate) pair. Walks drawn
/// from the same (seed, node, replicate) are identical regardless of the
/// order or thread in which they are generated.
inline constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t node,
                                          std::uint64_t replicate) noexcept {
  std::uint64_t h = mix64(node + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (replicate * 0xd6e8feb86659fd93ULL + 0x632be59bd9b4e019ULL));
  return mix64(seed ^ h);
}

/// Derives an independent seed for a labelled purpose (e.g. evaluation).
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  return mix64(seed ^ mix64(tag ^ 0xa0761d6478bd642fULL));
}

/// Counter-based generator: the i-th draw is a pure function of (key, i).
/// Satisfies UniformRandomBitGenerator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
  /// rejection, so the result is unbiased and platform independent.
  constexpr std::uint64_t uniform(std::uint64_t bound) noexcept {
    std::uint64_t x = (*this)();
    uint128 m = static_cast<uint128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<uint128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  constexpr double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rwdom
