#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

namespace sparse_ising {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Stream ids used inside a trial. Each purpose draws from its own stream so
/// adding draws in one place never shifts another.
enum class Stream : std::uint32_t {
  Init = 0,
  Sweep = 1,
  Swap = 2,
  Cluster = 3,
  Calibrate = 4,
  Replica = 16,  // replica r uses Replica + r
};

/// Counter-based generator keyed by (seed, trial, stream).
///
/// Contract "philox4x32-10/v1": key = (seed low 32, seed high 32); block k of
/// stream s in trial t is philox4x32_10({k low 32, k high 32, t, s}, key), and
/// the four output words are consumed in order. Any implementation following
/// this contract reproduces every stream bit for bit.
class CounterRng {
public:
  using result_type = std::uint32_t;
  static constexpr const char* kAlgorithm = "philox4x32-10/v1";

  CounterRng(std::uint64_t seed, std::uint32_t trial, std::uint32_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        trial_(trial),
        stream_(stream) {}

  CounterRng(std::uint64_t seed, std::uint32_t trial, Stream stream) noexcept
      : CounterRng(seed, trial, static_cast<std::uint32_t>(stream)) {}

  /// Generator for another stream of the same (seed, trial).
  CounterRng split(std::uint32_t stream) const noexcept {
    return CounterRng(seed(), trial_, stream);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (index_ == 4) refill();
    return buffer_[index_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = (*this)();
    return (hi << 32) | (*this)();
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) via Lemire's multiply-and-reject. bound > 0.
  std::uint32_t below(std::uint32_t bound) noexcept {
    std::uint64_t product = static_cast<std::uint64_t>((*this)()) * bound;
    auto low = static_cast<std::uint32_t>(product);
    if (low < bound) {
      const std::uint32_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        product = static_cast<std::uint64_t>((*this)()) * bound;
        low = static_cast<std::uint32_t>(product);
      }
    }
    return static_cast<std::uint32_t>(product >> 32);
  }

  /// Fisher-Yates shuffle (from the back), portable across standard libraries.
  template <typename T>
  void shuffle(std::span<T> values) noexcept {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = below(static_cast<std::uint32_t>(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  std::uint64_t seed() const noexcept {
    return (static_cast<std::uint64_t>(key_[1]) << 32) | key_[0];
  }
  std::uint32_t trial() const noexcept { return trial_; }
  std::uint32_t stream() const noexcept { return stream_; }

private:
  void refill() noexcept {
    buffer_ = philox4x32_10({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32), trial_,
                             stream_},
                            key_);
    ++block_;
    index_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint32_t trial_;
  std::uint32_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  std::size_t index_ = 4;
};

}  // namespace sparse_ising
