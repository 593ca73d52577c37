#include "hhnet/epes.hpp"

#include <cmath>

namespace hhnet {

std::uint64_t StepConfig::step_count() const {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be > 0");
  }
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("t_end must be > 0");
  }
  const double ratio = t_end / dt;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("t_end must be a positive integer multiple of dt");
  }
  return static_cast<std::uint64_t>(rounded);
}

std::uint64_t StepReport::total() const {
  std::uint64_t sum = 0;
  for (int g = 0; g < kGateCount; ++g) {
    sum += low[g] + high[g];
  }
  return sum;
}

StepReport& StepReport::operator+=(const StepReport& other) {
  for (int g = 0; g < kGateCount; ++g) {
    low[g] += other.low[g];
    high[g] += other.high[g];
  }
  return *this;
}

BrownianLadderNoise::BrownianLadderNoise(std::uint64_t master_seed,
                                         std::uint64_t replica, std::uint32_t ratio)
    : fine_(master_seed, replica), ratio_(ratio) {
  if (ratio_ == 0) {
    throw std::invalid_argument("ladder ratio must be >= 1");
  }
  inv_sqrt_ratio_ = 1.0 / std::sqrt(static_cast<double>(ratio_));
}

double BrownianLadderNoise::normal(std::uint32_t label, int gate, std::uint64_t step) {
  if (ratio_ == 1) {
    return fine_.normal(label, static_cast<std::uint32_t>(gate), step);
  }
  double sum = 0.0;
  const std::uint64_t base = step * ratio_;
  for (std::uint32_t j = 0; j < ratio_; ++j) {
    sum += fine_.normal(label, static_cast<std::uint32_t>(gate), base + j);
  }
  return sum * inv_sqrt_ratio_;
}

double exact_voltage_step(double v, double a, double r, double dt) {
  if (!(a >= 0.0)) {
    throw std::logic_error("exact_voltage_step requires a >= 0");
  }
  const double adt = a * dt;
  if (adt < 1e-8) {
    return v + (r - a * v) * dt;
  }
  // (1 - e^{-a dt}) / a through expm1 keeps the small-adt regime accurate.
  return v + (r - a * v) * (-std::expm1(-adt)) / a;
}

OuMoments ou_gate_moments(double x, double rho, double zeta, double sigma_x, double dt) {
  const double kappa = rho + zeta;
  // em = e^{-kappa dt} - 1, in (-1, 0]
  const double em = std::expm1(-kappa * dt);
  OuMoments out;
  out.mean = x * (1.0 + em) + (rho / kappa) * (-em);
  if (sigma_x == 0.0) {
    out.variance = 0.0;
  } else {
    // 1 - e^{-2 kappa dt} = -em (2 + em)
    out.variance = sigma_x * sigma_x * (-em) * (2.0 + em) / (2.0 * kappa);
  }
  return out;
}

GateUpdate ou_gate_step(const OuMoments& moments, double gaussian_draw) {
  GateUpdate out;
  out.raw = moments.variance > 0.0
                ? moments.mean + std::sqrt(moments.variance) * gaussian_draw
                : moments.mean;
  if (out.raw < 0.0) {
    out.projected = 0.0;
    out.clamped_low = true;
  } else if (out.raw > 1.0) {
    out.projected = 1.0;
    out.clamped_high = true;
  } else {
    out.projected = out.raw;
  }
  return out;
}

std::size_t Network::neuron_count() const {
  std::size_t n = 0;
  for (std::size_t s : sizes) {
    n += s;
  }
  return n;
}

Network Network::single(std::size_t n, const PopulationParams& p,
                        const CouplingSpec& coupling) {
  Network net;
  net.sizes = {n};
  net.populations = {p};
  net.coupling = coupling;
  return net;
}

void Network::validate(bool require_leak) const {
  if (sizes.empty() || sizes.size() != populations.size()) {
    throw std::invalid_argument("network needs one parameter set per population");
  }
  for (std::size_t s : sizes) {
    if (s < 1) {
      throw std::invalid_argument("population sizes must be >= 1");
    }
  }
  for (const auto& p : populations) {
    p.validate(require_leak);
  }
  coupling.validate(sizes.size());
}

namespace {

StepReport epes_step(NetworkState& state, const Network& network, double dt,
                     NoiseSource& noise, std::uint64_t step,
                     const PopulationMeans& means) {
  StepReport report;
  const auto& labels = state.labels();
  for (std::size_t p = 0; p < network.populations.size(); ++p) {
    const PopulationParams& params = network.populations[p];
    const CouplingTerms coup = coupling_terms(p, means, network.coupling);
    const auto [lo, hi] = state.population_range(p);
    for (std::size_t i = lo; i < hi; ++i) {
      const double v_old = state.v[i];
      const double gates[kGateCount] = {state.m[i], state.n[i], state.h[i], state.y[i]};

      const VoltageAffine affine =
          voltage_drift_affine(gates[0], gates[1], gates[2], params);
      state.v[i] =
          exact_voltage_step(v_old, affine.a + coup.a, affine.r + coup.r, dt);

      double updated[kGateCount];
      for (int g = 0; g < kGateCount; ++g) {
        const GateKind kind = kGates[g];
        const RatePair rates = gate_rates(kind, v_old, params.rates);
        const double sigma_x =
            gate_diffusion(kind, v_old, gates[g], params.rates, params.noise);
        const OuMoments moments =
            ou_gate_moments(gates[g], rates.rho, rates.zeta, sigma_x, dt);
        const double z =
            moments.variance > 0.0 ? noise.normal(labels[i], g, step) : 0.0;
        const GateUpdate u = ou_gate_step(moments, z);
        updated[g] = u.projected;
        report.low[g] += u.clamped_low ? 1 : 0;
        report.high[g] += u.clamped_high ? 1 : 0;
      }
      state.m[i] = updated[0];
      state.n[i] = updated[1];
      state.h[i] = updated[2];
      state.y[i] = updated[3];
    }
  }
  return report;
}

StepReport euler_maruyama_step(NetworkState& state, const Network& network, double dt,
                               NoiseSource& noise, std::uint64_t step,
                               const PopulationMeans& means) {
  StepReport report;
  const double sqrt_dt = std::sqrt(dt);
  const auto& labels = state.labels();
  for (std::size_t p = 0; p < network.populations.size(); ++p) {
    const PopulationParams& params = network.populations[p];
    const CouplingTerms coup = coupling_terms(p, means, network.coupling);
    const auto [lo, hi] = state.population_range(p);
    for (std::size_t i = lo; i < hi; ++i) {
      const double v_old = state.v[i];
      const double gates[kGateCount] = {state.m[i], state.n[i], state.h[i], state.y[i]};

      const VoltageAffine affine =
          voltage_drift_affine(gates[0], gates[1], gates[2], params);
      state.v[i] =
          v_old + dt * ((affine.r + coup.r) - (affine.a + coup.a) * v_old);

      double updated[kGateCount];
      for (int g = 0; g < kGateCount; ++g) {
        const GateKind kind = kGates[g];
        const RatePair rates = gate_rates(kind, v_old, params.rates);
        const double sigma_x =
            gate_diffusion(kind, v_old, gates[g], params.rates, params.noise);
        double raw =
            gates[g] + dt * (rates.rho * (1.0 - gates[g]) - rates.zeta * gates[g]);
        if (sigma_x > 0.0) {
          raw += sigma_x * sqrt_dt * noise.normal(labels[i], g, step);
        }
        if (raw < 0.0) {
          updated[g] = 0.0;
          ++report.low[g];
        } else if (raw > 1.0) {
          updated[g] = 1.0;
          ++report.high[g];
        } else {
          updated[g] = raw;
        }
      }
      state.m[i] = updated[0];
      state.n[i] = updated[1];
      state.h[i] = updated[2];
      state.y[i] = updated[3];
    }
  }
  return report;
}

}  // namespace

StepReport network_step(NetworkState& state, const Network& network,
                        const StepConfig& cfg, NoiseSource& noise,
                        std::uint64_t step_index, const PopulationMeans& means) {
  if (cfg.scheme == Scheme::Epes) {
    return epes_step(state, network, cfg.dt, noise, step_index, means);
  }
  return euler_maruyama_step(state, network, cfg.dt, noise, step_index, means);
}

StepReport network_step(NetworkState& state, const Network& network,
                        const StepConfig& cfg, NoiseSource& noise,
                        std::uint64_t step_index) {
  const PopulationMeans means = population_means(state);
  return network_step(state, network, cfg, noise, step_index, means);
}

}  // namespace hhnet
