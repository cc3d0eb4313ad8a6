#pragma once

// Counter-based random numbers. Every draw is a pure function of
// (seed, stream, counter), so a sample's random content does not depend on
// which worker produced it or in what order.

#include <array>
#include <cstdint>

namespace egue {

/// Philox4x32 with 10 rounds (Salmon et al. 2011 constants).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Sequential view over one (seed, stream) pair. Cheap to construct; the
/// n-th normal deviate of a stream is fixed regardless of how the stream is
/// consumed afterwards.
class CounterStream {
public:
  CounterStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in the open interval (0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

  std::uint64_t blocks_used() const { return block_; }

private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int next_word_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

} // namespace egue
