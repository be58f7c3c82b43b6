#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hawkes {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based stream keyed by (seed, stream_id).
///
/// The n-th 64-bit draw depends only on (seed, stream_id, n), so replicas run
/// on any thread reproduce bit-for-bit. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  /// Exp(rate) by inversion; strictly positive.
  double exponential(double rate) noexcept;

  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;  // number of unread 64-bit halves in buffer_
  std::uint64_t draws_ = 0;
};

}  // namespace hawkes
