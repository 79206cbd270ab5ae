#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace unforced {

/// xoshiro256** stream seeded through splitmix64.
///
/// Every helper below consumes exactly one 64-bit draw, and all arithmetic is
/// integer or exact IEEE, so a seed reproduces the same sequence on any
/// platform. Standard-library distributions are avoided for that reason.
class RandomStream {
public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) noexcept;

  /// Independent stream for replicate `index` of a run seeded with `seed`.
  static RandomStream for_replicate(std::uint64_t seed, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on [0, n) by multiply-high; n must be positive.
  std::size_t index(std::size_t n) noexcept;
  /// True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p) noexcept { return uniform() < p; }

private:
  std::array<std::uint64_t, 4> s_{};
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace unforced
