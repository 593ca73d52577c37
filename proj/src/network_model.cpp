#include "hhnet/network_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hhnet {

double NeuronState::component(int c) const {
  switch (c) {
    case 0: return v;
    case 1: return m;
    case 2: return n;
    case 3: return h;
    case 4: return y;
  }
  throw std::out_of_range("component index");
}

void NeuronState::set_component(int c, double value) {
  switch (c) {
    case 0: v = value; return;
    case 1: m = value; return;
    case 2: n = value; return;
    case 3: h = value; return;
    case 4: y = value; return;
  }
  throw std::out_of_range("component index");
}

const char* component_name(int c) {
  static const char* names[kComponentCount] = {"v", "m", "n", "h", "y"};
  if (c < 0 || c >= kComponentCount) {
    throw std::out_of_range("component index");
  }
  return names[c];
}

double squared_distance(const NeuronState& a, const NeuronState& b) {
  const double dv = a.v - b.v;
  const double dm = a.m - b.m;
  const double dn = a.n - b.n;
  const double dh = a.h - b.h;
  const double dy = a.y - b.y;
  return dv * dv + dm * dm + dn * dn + dh * dh + dy * dy;
}

PopulationParams PopulationParams::hodgkin_huxley(double i_ext, double sigma) {
  PopulationParams p;
  p.g_na = 120.0;
  p.g_k = 36.0;
  p.g_l = 0.3;
  p.v_na = 50.0;
  p.v_k = -77.0;
  p.v_l = -54.4;
  p.i_ext = i_ext;
  p.rates = RateSpec::hodgkin_huxley();
  p.noise.sigma = sigma;
  return p;
}

void PopulationParams::validate(bool require_leak) const {
  if (!(g_na >= 0.0) || !(g_k >= 0.0)) {
    throw std::invalid_argument("g_na and g_k must be >= 0");
  }
  if (require_leak && !(g_l > 0.0)) {
    throw std::invalid_argument("leak conductance g_l must be > 0");
  }
  if (!(g_l >= 0.0)) {
    throw std::invalid_argument("g_l must be >= 0");
  }
  if (!std::isfinite(i_ext)) {
    throw std::invalid_argument("input current must be finite");
  }
  rates.validate();
  noise.validate();
}

CouplingSpec CouplingSpec::none(std::size_t populations) {
  CouplingSpec c;
  c.j_e.assign(populations, std::vector<double>(populations, 0.0));
  c.j_ch.assign(populations, std::vector<double>(populations, 0.0));
  c.v_rev.assign(populations, std::vector<double>(populations, 0.0));
  return c;
}

CouplingSpec CouplingSpec::single(double j_e, double j_ch, double v_rev) {
  CouplingSpec c;
  c.j_e = {{j_e}};
  c.j_ch = {{j_ch}};
  c.v_rev = {{v_rev}};
  return c;
}

void CouplingSpec::validate(std::size_t populations) const {
  auto check_shape = [populations](const std::vector<std::vector<double>>& mat,
                                   const char* what) {
    if (mat.size() != populations) {
      throw std::invalid_argument(std::string(what) + ": wrong row count");
    }
    for (const auto& row : mat) {
      if (row.size() != populations) {
        throw std::invalid_argument(std::string(what) + ": wrong column count");
      }
    }
  };
  check_shape(j_e, "j_e");
  check_shape(j_ch, "j_ch");
  check_shape(v_rev, "v_rev");
  for (const auto& row : j_e) {
    for (double x : row) {
      if (!(x >= 0.0)) throw std::invalid_argument("j_e entries must be >= 0");
    }
  }
  for (const auto& row : j_ch) {
    for (double x : row) {
      if (!(x >= 0.0)) throw std::invalid_argument("j_ch entries must be >= 0");
    }
  }
  for (const auto& row : v_rev) {
    for (double x : row) {
      if (!std::isfinite(x)) throw std::invalid_argument("v_rev entries must be finite");
    }
  }
}

NetworkState::NetworkState(const std::vector<std::size_t>& population_sizes) {
  pop_begin_.push_back(0);
  for (std::size_t s : population_sizes) {
    if (s < 1) {
      throw std::invalid_argument("population sizes must be >= 1");
    }
    pop_begin_.push_back(pop_begin_.back() + s);
  }
  const std::size_t n = pop_begin_.back();
  v.assign(n, 0.0);
  m.assign(n, 0.0);
  this->n.assign(n, 0.0);
  h.assign(n, 0.0);
  y.assign(n, 0.0);
  label_.resize(n);
  std::iota(label_.begin(), label_.end(), 0u);
  order_ = label_;
}

std::size_t NetworkState::population_of(std::size_t i) const {
  for (std::size_t p = 0; p + 1 < pop_begin_.size(); ++p) {
    if (i < pop_begin_[p + 1]) return p;
  }
  throw std::out_of_range("neuron index");
}

std::pair<std::size_t, std::size_t> NetworkState::population_range(std::size_t p) const {
  if (p + 1 >= pop_begin_.size()) {
    throw std::out_of_range("population index");
  }
  return {pop_begin_[p], pop_begin_[p + 1]};
}

void NetworkState::set_neuron(std::size_t i, const NeuronState& s) {
  v[i] = s.v;
  m[i] = s.m;
  n[i] = s.n;
  h[i] = s.h;
  y[i] = s.y;
}

void NetworkState::set_labels(std::vector<std::uint32_t> labels) {
  if (labels.size() != size()) {
    throw std::invalid_argument("label count must match network size");
  }
  label_ = std::move(labels);
  order_.resize(size());
  std::iota(order_.begin(), order_.end(), 0u);
  // Label order within each population; populations keep their slot ranges.
  for (std::size_t p = 0; p < population_count(); ++p) {
    auto [lo, hi] = population_range(p);
    std::sort(order_.begin() + lo, order_.begin() + hi,
              [this](std::uint32_t a, std::uint32_t b) { return label_[a] < label_[b]; });
  }
}

double voltage_drift(double v, double m, double n, double h, const PopulationParams& p) {
  const double n4 = n * n * n * n;
  const double m3h = m * m * m * h;
  return p.i_ext - p.g_k * n4 * (v - p.v_k) - p.g_na * m3h * (v - p.v_na) -
         p.g_l * (v - p.v_l);
}

VoltageAffine voltage_drift_affine(double m, double n, double h, const PopulationParams& p) {
  const double n4 = n * n * n * n;
  const double m3h = m * m * m * h;
  VoltageAffine out;
  out.a = p.g_k * n4 + p.g_na * m3h + p.g_l;
  out.r = p.i_ext + p.g_k * n4 * p.v_k + p.g_na * m3h * p.v_na + p.g_l * p.v_l;
  return out;
}

namespace {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

PopulationMeans population_means(const NetworkState& state) {
  PopulationMeans means;
  means.by_population.resize(state.population_count());
  const auto& order = state.reduction_order();
  for (std::size_t p = 0; p < state.population_count(); ++p) {
    auto [lo, hi] = state.population_range(p);
    KahanSum sv, sm, sn, sh, sy;
    for (std::size_t k = lo; k < hi; ++k) {
      const std::size_t i = order[k];
      sv.add(state.v[i]);
      sm.add(state.m[i]);
      sn.add(state.n[i]);
      sh.add(state.h[i]);
      sy.add(state.y[i]);
    }
    const double inv = 1.0 / static_cast<double>(hi - lo);
    means.by_population[p] = {sv.sum * inv, sm.sum * inv, sn.sum * inv, sh.sum * inv,
                              sy.sum * inv};
  }
  return means;
}

CouplingTerms coupling_terms(std::size_t target_population, const PopulationMeans& means,
                             const CouplingSpec& coupling) {
  const std::size_t pops = means.by_population.size();
  if (target_population >= coupling.population_count() ||
      coupling.population_count() != pops) {
    throw std::out_of_range("unknown population in coupling spec");
  }
  CouplingTerms out{0.0, 0.0};
  const auto& je = coupling.j_e[target_population];
  const auto& jch = coupling.j_ch[target_population];
  const auto& vrev = coupling.v_rev[target_population];
  for (std::size_t g = 0; g < pops; ++g) {
    const NeuronState& mg = means.by_population[g];
    out.a += je[g] + jch[g] * mg.y;
    out.r += je[g] * mg.v + jch[g] * mg.y * vrev[g];
  }
  return out;
}

double r_max(const PopulationParams& p, const CouplingSpec& coupling,
             std::size_t population) {
  if (population >= coupling.population_count()) {
    throw std::out_of_range("unknown population in coupling spec");
  }
  const double base = p.i_ext + p.g_l * p.v_l;
  double hi = base;
  double lo = base;
  auto corner = [&hi, &lo](double coeff) {
    if (coeff > 0.0) {
      hi += coeff;
    } else {
      lo += coeff;
    }
  };
  corner(p.g_na * p.v_na);
  corner(p.g_k * p.v_k);
  for (std::size_t g = 0; g < coupling.population_count(); ++g) {
    corner(coupling.j_ch[population][g] * coupling.v_rev[population][g]);
  }
  return std::max(std::abs(hi), std::abs(lo));
}

double v_star(double t, double v0_max, const PopulationParams& p,
              const CouplingSpec& coupling, std::size_t population) {
  if (!(p.g_l > 0.0)) {
    throw std::domain_error("voltage bound unavailable: g_l must be > 0");
  }
  return 4.0 * r_max(p, coupling, population) / p.g_l +
         2.0 * v0_max * std::exp(-p.g_l * t);
}

}  // namespace hhnet
