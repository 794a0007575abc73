#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

namespace iprob {

// Philox4x32 with 10 rounds (Salmon et al., SC'11).  Stateless block function:
// the same (counter, key) always yields the same four words.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::string_view kAlgorithm = "philox4x32-10";

  static Counter block(Counter counter, Key key) noexcept;
};

// Stream of 64-bit words drawn from Philox4x32-10.  The 64-bit seed is the key;
// the stream id occupies the upper half of the counter, so distinct streams of
// one seed never overlap.  Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next_u64(); }
  std::uint64_t next_u64() noexcept;

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  // Uniform on {0, ..., n-1}; n must be positive.  Rejection sampling, unbiased.
  std::size_t uniform_index(std::size_t n) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t blocks_consumed() const noexcept { return position_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  Philox4x32::Counter buffer_{};
  int buffered_ = 0;
};

// Substream seed for (seed, name, index).  Stable across platforms: FNV-1a over
// the name, mixed with splitmix64 finalizers.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name,
                          std::uint64_t index = 0) noexcept;

}  // namespace iprob
