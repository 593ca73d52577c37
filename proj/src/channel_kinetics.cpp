#include "hhnet/channel_kinetics.hpp"

namespace hhnet {

const char* gate_name(GateKind g) {
  switch (g) {
    case GateKind::M: return "m";
    case GateKind::N: return "n";
    case GateKind::H: return "h";
    case GateKind::Y: return "y";
  }
  return "?";
}

const RateSpec& RateSpec::hodgkin_huxley() {
  // Squid-axon rates plus the standard neurotransmitter channel.
  static const RateSpec spec{
      // m: 0.1 (V+40) / (1 - exp(-(V+40)/10)),  4 exp(-(V+65)/18)
      {0.1, 0.1, -40.0, 4.0, 1.0 / 18.0, -65.0},
      // n: 0.01 (V+55) / (1 - exp(-(V+55)/10)),  0.125 exp(-(V+65)/80)
      {0.01, 0.1, -55.0, 0.125, 1.0 / 80.0, -65.0},
      // h: 0.07 exp(-(V+65)/20),  1 / (1 + exp(-(V+35)/10))
      {0.07, 0.05, -65.0, 1.0, 0.1, -35.0},
      // y: 5 / (1 + exp(-0.2 (V-2))),  0.18
      {5.0, 1.0, 0.2, 2.0, 0.18},
  };
  return spec;
}

void RateSpec::validate() const {
  const bool ok = m.a_r > 0.0 && m.a_d > 0.0 && n.a_r > 0.0 && n.a_d > 0.0 &&
                  h.a_r > 0.0 && h.a_d > 0.0 && y.a_r > 0.0 && y.t_max > 0.0 &&
                  y.a_d > 0.0;
  if (!ok) {
    throw std::invalid_argument("rate amplitudes must be strictly positive");
  }
}

void NoiseSpec::validate() const {
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("sigma must be >= 0");
  }
  if (!(chi_amplitude > 0.0)) {
    throw std::invalid_argument("chi amplitude must be > 0");
  }
}

}  // namespace hhnet
