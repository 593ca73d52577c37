#pragma once

#include <optional>

#include "hhnet/diagnostics.hpp"
#include "hhnet/simulate.hpp"

namespace hhnet {

/// Coupled-path self-convergence study: every level of the step-size ladder
/// and the fine reference run share initial conditions and Brownian paths,
/// the coarse increments being sums of fine ones.
struct StrongErrorConfig {
  Network network;
  InitialLaw init = UniformBoxLaw{};
  double coarsest_dt = 0.02;       // Delta
  int levels = 4;                  // Delta, Delta/2, ..., Delta/2^(levels-1)
  int reference_refinement = 32;   // reference dt = Delta / this
  double t_end = 20.0;
  std::size_t paths = 200;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  Scheme scheme = Scheme::Epes;
};

struct StrongErrorLevel {
  double dt;
  double rms_error;             // terminal L2 deviation from the reference
  double projection_frequency;  // clamps per gate-step
  std::uint64_t gate_steps;
  std::uint64_t projections;
};

struct StrongErrorResult {
  std::vector<StrongErrorLevel> levels;
  /// log2(rms) vs log2(dt); absent in the noiseless case (the ladder then
  /// measures deterministic accuracy, not the strong stochastic order).
  std::optional<LineFit> order_fit;
};

StrongErrorResult strong_error_study(const StrongErrorConfig& cfg);

}  // namespace hhnet
