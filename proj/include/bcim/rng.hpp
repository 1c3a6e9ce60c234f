#pragma once

#include <cstdint>
#include <limits>

namespace bcim {

/// SplitMix64 generator. Cheap to seed, which matters because every Monte
/// Carlo simulation gets its own substream keyed by simulation index.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return mix(state_ += kGamma); }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed of substream `index` under `base`. Distinct indices give
/// statistically independent streams.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return SplitMix64::mix(base ^ SplitMix64::mix(index + 0x632be59bd9b4e019ULL));
}

template <class... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, Rest... rest) noexcept {
  return derive_seed(derive_seed(base, index), static_cast<std::uint64_t>(rest)...);
}

/// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). Lemire's multiply-shift with rejection, so
/// results are identical across standard library implementations.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  using u128 = unsigned __int128;
  std::uint64_t x = rng();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Bernoulli(p) on raw 64-bit draws: success iff draw < p * 2^64.
class BernoulliThreshold {
 public:
  explicit BernoulliThreshold(double p) noexcept {
    if (p >= 1.0) {
      always_ = true;
    } else if (p > 0.0) {
      threshold_ = static_cast<std::uint64_t>(p * 0x1.0p64);
    }
  }

  constexpr bool accept(std::uint64_t draw) const noexcept { return always_ || draw < threshold_; }

  template <class Rng>
  bool operator()(Rng& rng) const {
    return accept(rng());
  }

 private:
  std::uint64_t threshold_ = 0;
  bool always_ = false;
};

}  // namespace bcim
