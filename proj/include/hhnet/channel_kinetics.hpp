#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace hhnet {

/// Channel types, in the fixed order used by every gate-indexed array.
enum class GateKind : int { M = 0, N = 1, H = 2, Y = 3 };

inline constexpr int kGateCount = 4;
inline constexpr std::array<GateKind, kGateCount> kGates{GateKind::M, GateKind::N,
                                                         GateKind::H, GateKind::Y};

const char* gate_name(GateKind g);

/// rho(V) = a_r (V - v_r) / (1 - exp(-lambda_r (V - v_r))),
/// zeta(V) = a_d exp(-lambda_d (V - v_d)).
/// Used by the sodium (m) and potassium (n) activation channels.
struct ActivationRates {
  double a_r;       // 1/(ms mV)
  double lambda_r;  // 1/mV
  double v_r;       // mV
  double a_d;       // 1/ms
  double lambda_d;  // 1/mV
  double v_d;       // mV
};

/// rho(V) = a_r exp(-lambda_r (V - v_r)),
/// zeta(V) = a_d / (1 + exp(-lambda_d (V - v_d))).
/// Used by the sodium deactivation channel (h).
struct InactivationRates {
  double a_r;       // 1/ms
  double lambda_r;  // 1/mV
  double v_r;       // mV
  double a_d;       // 1/ms
  double lambda_d;  // 1/mV
  double v_d;       // mV
};

/// rho(V) = a_r t_max / (1 + exp(-lambda (V - v_t))),  zeta(V) = a_d.
/// Used by the neurotransmitter channel (y).
struct SynapticRates {
  double a_r;     // 1/(mM ms)
  double t_max;   // mM
  double lambda;  // 1/mV
  double v_t;     // mV
  double a_d;     // 1/ms
};

/// Per-gate rate functions. Only the three functional forms above are
/// supported; parameters are data, with the textbook values as the default.
struct RateSpec {
  ActivationRates m;
  ActivationRates n;
  InactivationRates h;
  SynapticRates y;

  static const RateSpec& hodgkin_huxley();

  /// Throws std::invalid_argument if any amplitude is not strictly positive.
  void validate() const;
};

/// Channel noise level and the peak value of the cut-off chi.
struct NoiseSpec {
  double sigma = 0.0;
  double chi_amplitude = 0.1;

  void validate() const;
};

namespace detail {

// a x / (1 - exp(-lambda x)), with the removable singularity at x = 0
// evaluated through a first-order Taylor branch for |lambda x| < 1e-6.
inline double linexp(double a, double lambda, double x) {
  const double t = lambda * x;
  if (std::abs(t) < 1e-6) {
    return (a / lambda) * (1.0 + 0.5 * t);
  }
  return a * x / (-std::expm1(-t));
}

inline double logistic(double amplitude, double lambda, double x) {
  return amplitude / (1.0 + std::exp(-lambda * x));
}

inline void require_finite(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("non-finite voltage");
  }
}

}  // namespace detail

/// Opening rate rho_x(V) in 1/ms. Strictly positive for finite V.
inline double rho(GateKind g, double v, const RateSpec& spec) {
  detail::require_finite(v);
  switch (g) {
    case GateKind::M:
      return detail::linexp(spec.m.a_r, spec.m.lambda_r, v - spec.m.v_r);
    case GateKind::N:
      return detail::linexp(spec.n.a_r, spec.n.lambda_r, v - spec.n.v_r);
    case GateKind::H:
      return spec.h.a_r * std::exp(-spec.h.lambda_r * (v - spec.h.v_r));
    case GateKind::Y:
      return detail::logistic(spec.y.a_r * spec.y.t_max, spec.y.lambda, v - spec.y.v_t);
  }
  throw std::invalid_argument("unknown gate kind");
}

/// Closing rate zeta_x(V) in 1/ms. Strictly positive; constant for gate y.
inline double zeta(GateKind g, double v, const RateSpec& spec) {
  detail::require_finite(v);
  switch (g) {
    case GateKind::M:
      return spec.m.a_d * std::exp(-spec.m.lambda_d * (v - spec.m.v_d));
    case GateKind::N:
      return spec.n.a_d * std::exp(-spec.n.lambda_d * (v - spec.n.v_d));
    case GateKind::H:
      return detail::logistic(spec.h.a_d, spec.h.lambda_d, v - spec.h.v_d);
    case GateKind::Y:
      return spec.y.a_d;
  }
  throw std::invalid_argument("unknown gate kind");
}

struct RatePair {
  double rho;
  double zeta;
};

inline RatePair gate_rates(GateKind g, double v, const RateSpec& spec) {
  return {rho(g, v, spec), zeta(g, v, spec)};
}

/// Bump cut-off: amplitude * exp(-0.5 / (1 - (2u-1)^2)) on (0,1), zero outside.
/// Symmetric about u = 1/2; peak value `amplitude` is never attained.
inline double chi(double u, double amplitude = 0.1) {
  if (!(u > 0.0 && u < 1.0)) {
    return 0.0;
  }
  const double w = 2.0 * u - 1.0;
  return amplitude * std::exp(-0.5 / (1.0 - w * w));
}

namespace detail {

inline void require_fraction(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("gate fraction outside [0,1]");
  }
}

}  // namespace detail

/// b_x(v,u) = rho_x(v)(1-u) - zeta_x(v)u. Zero exactly at u = rho/(rho+zeta).
inline double gate_drift(GateKind g, double v, double u, const RateSpec& spec) {
  detail::require_fraction(u);
  const RatePair r = gate_rates(g, v, spec);
  return r.rho * (1.0 - u) - r.zeta * u;
}

/// sigma_x(v,u) = sigma sqrt(rho(1-u) + zeta u) chi(u). Vanishes at u in {0,1}.
inline double gate_diffusion(GateKind g, double v, double u, const RateSpec& spec,
                             const NoiseSpec& noise) {
  detail::require_fraction(u);
  if (noise.sigma == 0.0) {
    return 0.0;
  }
  const double cut = chi(u, noise.chi_amplitude);
  if (cut == 0.0) {
    return 0.0;
  }
  const RatePair r = gate_rates(g, v, spec);
  return noise.sigma * std::sqrt(r.rho * (1.0 - u) + r.zeta * u) * cut;
}

/// Equilibrium fraction rho/(rho+zeta) at fixed voltage.
inline double gate_equilibrium(GateKind g, double v, const RateSpec& spec) {
  const RatePair r = gate_rates(g, v, spec);
  return r.rho / (r.rho + r.zeta);
}

}  // namespace hhnet
