#pragma once

#include <array>
#include <cstdint>

namespace hhnet {

/// Philox 4x32 counter-based generator, 10 rounds.
/// Stateless: each (counter, key) pair yields an independent 128-bit block,
/// which is what makes draws reproducible regardless of thread scheduling.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);
};

/// Inverse of the standard normal CDF (Wichura's AS 241, double precision).
double inverse_normal_cdf(double p);

/// Stream channels. Channels 0..3 are the per-gate Brownian increments in the
/// fixed gate order; the rest address initial-condition draws.
enum class StreamChannel : std::uint32_t {
  GateM = 0,
  GateN = 1,
  GateH = 2,
  GateY = 3,
  InitV = 8,
  InitM = 9,
  InitN = 10,
  InitH = 11,
  InitY = 12,
};

/// Addressed random draws for one (master seed, replica) pair. Distinct
/// (replica, label, channel, step) tuples give independent values; identical
/// tuples reproduce identical values across runs and worker counts.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t master_seed, std::uint64_t replica);

  /// Uniform on (0,1), never exactly 0 or 1.
  double uniform(std::uint32_t label, std::uint32_t channel, std::uint64_t step) const;
  double uniform(std::uint32_t label, StreamChannel c, std::uint64_t step) const {
    return uniform(label, static_cast<std::uint32_t>(c), step);
  }

  double normal(std::uint32_t label, std::uint32_t channel, std::uint64_t step) const;
  double normal(std::uint32_t label, StreamChannel c, std::uint64_t step) const {
    return normal(label, static_cast<std::uint32_t>(c), step);
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t replica() const { return replica_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t replica_;
  std::array<std::uint32_t, 2> key_;
};

}  // namespace hhnet
