#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "hhnet/simulate.hpp"
#include "hhnet/strong_error.hpp"

using namespace hhnet;

TEST_CASE("step grid rule") {
  CHECK(StepConfig{0.01, 400.0}.step_count() == 40000);
  CHECK(StepConfig{0.5, 2.0}.step_count() == 4);
  CHECK_THROWS_AS((StepConfig{0.3, 1.0}.step_count()), std::invalid_argument);
  CHECK_THROWS_AS((StepConfig{-0.1, 1.0}.step_count()), std::invalid_argument);
  CHECK_THROWS_AS((StepConfig{0.1, 0.0}.step_count()), std::invalid_argument);
}

TEST_CASE("exact voltage step: equilibrium, decay, drift limit") {
  CHECK(exact_voltage_step(2.5, 2.0, 5.0, 0.7) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(exact_voltage_step(1.0, 1.0, 0.0, std::log(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(exact_voltage_step(0.0, 0.0, 3.0, 2.0) == doctest::Approx(6.0));
  CHECK_THROWS_AS(exact_voltage_step(0.0, -1.0, 0.0, 0.1), std::logic_error);
}

TEST_CASE("exact voltage step composes: two half steps equal one step") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(0.0, 200.0), ur(-6000.0, 6000.0),
      uv(-100.0, 100.0);
  for (int k = 0; k < 200; ++k) {
    const double a = ua(rng), r = ur(rng), v = uv(rng), dt = 0.01;
    const double one = exact_voltage_step(v, a, r, dt);
    const double two =
        exact_voltage_step(exact_voltage_step(v, a, r, dt / 2), a, r, dt / 2);
    CHECK(one == doctest::Approx(two).epsilon(1e-12));
  }
}

TEST_CASE("ou gate moments: closed form, stationary limits, identity step") {
  const OuMoments m0 = ou_gate_moments(0.3, 2.0, 1.0, 0.5, 0.25);
  const double kappa = 3.0, e = std::exp(-kappa * 0.25);
  CHECK(m0.mean == doctest::Approx(0.3 * e + (2.0 / 3.0) * (1 - e)).epsilon(1e-14));
  CHECK(m0.variance ==
        doctest::Approx(0.25 * (1 - e * e) / (2 * kappa)).epsilon(1e-14));

  CHECK(ou_gate_moments(0.0, 1.0, 1.0, 0.0, 1e9).mean == doctest::Approx(0.5));
  CHECK(ou_gate_moments(0.9, 1.0, 1.0, 2.0, 1e9).variance ==
        doctest::Approx(4.0 / 4.0).epsilon(1e-12));
  const OuMoments id = ou_gate_moments(0.42, 1.5, 0.5, 1.0, 0.0);
  CHECK(id.mean == doctest::Approx(0.42).epsilon(1e-15));
  CHECK(id.variance == 0.0);
}

TEST_CASE("ou gate step projects and records") {
  const GateUpdate mid = ou_gate_step({0.4, 0.0}, 0.0);
  CHECK(mid.projected == 0.4);
  CHECK_FALSE(mid.clamped_low);
  CHECK_FALSE(mid.clamped_high);

  const GateUpdate high = ou_gate_step({1.2, 0.0}, 0.0);
  CHECK(high.projected == 1.0);
  CHECK(high.raw == doctest::Approx(1.2));
  CHECK(high.clamped_high);

  const GateUpdate low = ou_gate_step({0.1, 0.04}, -3.0);
  CHECK(low.raw == doctest::Approx(0.1 - 0.6));
  CHECK(low.projected == 0.0);
  CHECK(low.clamped_low);
}

TEST_CASE("ladder noise aggregates fine increments") {
  const GaussianStream fine(99, 5);
  BrownianLadderNoise coarse(99, 5, 4);
  for (std::uint64_t k : {0ull, 3ull, 17ull}) {
    double sum = 0.0;
    for (std::uint64_t j = 0; j < 4; ++j) {
      sum += fine.normal(2, 1, 4 * k + j);
    }
    CHECK(coarse.normal(2, 1, k) == doctest::Approx(sum / 2.0).epsilon(1e-15));
  }
  BrownianLadderNoise unit(99, 5, 1);
  CHECK(unit.normal(2, 1, 9) == fine.normal(2, 1, 9));
}

namespace {

Network electrical_network(std::size_t n, double sigma, double j_e, double i_ext = 25.0) {
  return Network::single(n, PopulationParams::hodgkin_huxley(i_ext, sigma),
                         CouplingSpec::single(j_e));
}

}  // namespace

TEST_CASE("noiseless identical neurons remain bit-identical and bounded") {
  const Network net = electrical_network(8, 0.0, 1.0);
  NetworkState state(net.sizes);
  const NeuronState start{-31.0, 0.2, 0.3, 0.4, 0.1};
  for (std::size_t i = 0; i < 8; ++i) {
    state.set_neuron(i, start);
  }
  ContractNoise noise(1, 0);
  const StepConfig cfg{0.01, 5.0};
  VstarObserver vstar(net, 31.0);
  StateObserver* obs[] = {&vstar};
  const SimulationResult res = simulate(net, cfg, std::move(state), noise, obs);
  for (std::size_t i = 1; i < 8; ++i) {
    CHECK(res.final_state.v[i] == res.final_state.v[0]);
    CHECK(res.final_state.m[i] == res.final_state.m[0]);
    CHECK(res.final_state.y[i] == res.final_state.y[0]);
  }
  CHECK(res.projections.total() == 0);  // sigma = 0: no projection events
  CHECK(vstar.worst_ratio() <= 1.0);    // scheme voltages obey the a-priori bound
}

TEST_CASE("gates stay in [0,1] under noise and projections are counted") {
  const Network net = electrical_network(12, 1.0, 1.0);
  const GaussianStream stream(77, 0);
  NetworkState state = make_initial_state(net, UniformBoxLaw{}, stream);
  ContractNoise noise(77, 0);
  const StepConfig cfg{0.02, 10.0};
  const std::uint64_t steps = cfg.step_count();
  for (std::uint64_t k = 0; k < steps; ++k) {
    network_step(state, net, cfg, noise, k);
    for (std::size_t i = 0; i < state.size(); ++i) {
      CHECK(state.m[i] >= 0.0);
      CHECK(state.m[i] <= 1.0);
      CHECK(state.n[i] >= 0.0);
      CHECK(state.n[i] <= 1.0);
      CHECK(state.h[i] >= 0.0);
      CHECK(state.h[i] <= 1.0);
      CHECK(state.y[i] >= 0.0);
      CHECK(state.y[i] <= 1.0);
    }
  }
}

TEST_CASE("single neuron without input settles to a fixed point") {
  const Network net = electrical_network(1, 0.0, 0.0, 0.0);
  NetworkState state(net.sizes);
  state.set_neuron(0, rest_state(net.populations[0]));
  ContractNoise noise(5, 0);
  const StepConfig cfg{0.01, 200.0};
  const SimulationResult res = simulate(net, cfg, std::move(state), noise);
  const NeuronState final = res.final_state.neuron(0);
  const double dv = voltage_drift(final.v, final.m, final.n, final.h,
                                  net.populations[0]);
  CHECK(std::abs(dv) < 1e-6);
  CHECK(final.v > -80.0);
  CHECK(final.v < -60.0);
}

TEST_CASE("euler-maruyama single step matches the textbook update") {
  const Network net = electrical_network(1, 0.7, 0.0, 10.0);
  NetworkState state(net.sizes);
  const NeuronState x0{-50.0, 0.3, 0.4, 0.5, 0.2};
  state.set_neuron(0, x0);
  const StepConfig cfg{0.01, 0.01, Scheme::EulerMaruyama};
  ContractNoise noise(123, 0);
  network_step(state, net, cfg, noise, 0);

  const PopulationParams& p = net.populations[0];
  const double expect_v =
      x0.v + cfg.dt * voltage_drift(x0.v, x0.m, x0.n, x0.h, p);
  CHECK(state.v[0] == doctest::Approx(expect_v).epsilon(1e-12));

  const GaussianStream stream(123, 0);
  const RatePair rm = gate_rates(GateKind::M, x0.v, p.rates);
  const double sm = gate_diffusion(GateKind::M, x0.v, x0.m, p.rates, p.noise);
  const double expect_m = x0.m + cfg.dt * (rm.rho * (1 - x0.m) - rm.zeta * x0.m) +
                          sm * std::sqrt(cfg.dt) * stream.normal(0, 0, 0);
  CHECK(state.m[0] == doctest::Approx(expect_m).epsilon(1e-12));
}

TEST_CASE("euler-maruyama converges to the epes limit as dt shrinks") {
  const NeuronState start{-40.0, 0.3, 0.35, 0.45, 0.05};
  auto run = [&](Scheme scheme, double dt) {
    const Network net = electrical_network(1, 0.0, 0.0);
    NetworkState state(net.sizes);
    state.set_neuron(0, start);
    ContractNoise noise(1, 0);
    return simulate(net, StepConfig{dt, 10.0, scheme}, std::move(state), noise)
        .final_state.neuron(0);
  };
  const NeuronState epes_fine = run(Scheme::Epes, 1e-4);
  const NeuronState em_fine = run(Scheme::EulerMaruyama, 1e-4);
  const NeuronState em_coarse = run(Scheme::EulerMaruyama, 1e-2);
  CHECK(std::abs(em_fine.v - epes_fine.v) < 0.5);
  CHECK(std::abs(em_fine.v - epes_fine.v) < std::abs(em_coarse.v - epes_fine.v));
}

TEST_CASE("epes and euler-maruyama ensemble voltage curves agree at fine dt") {
  const Network net = electrical_network(10, 0.5, 1.0);
  const StepConfig fine_epes{0.001, 50.0, Scheme::Epes};
  const StepConfig fine_em{0.001, 50.0, Scheme::EulerMaruyama};
  double accumulated_abs_diff = 0.0;
  std::size_t points = 0;
  for (std::uint64_t replica = 0; replica < 4; ++replica) {
    const GaussianStream stream(55, replica);
    NetworkState start = make_initial_state(net, UniformBoxLaw{}, stream);
    ContractNoise noise_a(55, replica), noise_b(55, replica);
    StatsRecorder stats_a(replica, 100), stats_b(replica, 100);
    StateObserver* obs_a[] = {&stats_a};
    StateObserver* obs_b[] = {&stats_b};
    simulate(net, fine_epes, start, noise_a, obs_a);
    simulate(net, fine_em, start, noise_b, obs_b);
    for (std::size_t k = 0; k < stats_a.series.t.size(); ++k) {
      accumulated_abs_diff +=
          std::abs(stats_a.series.mean[k][0] - stats_b.series.mean[k][0]);
      ++points;
    }
  }
  // Same Brownian paths: the schemes' mean-voltage curves track each other to
  // the discretization scale.
  CHECK(accumulated_abs_diff / static_cast<double>(points) < 2.0);
}

TEST_CASE("relabeling neurons and streams relabels the trajectory bitwise") {
  const std::size_t n = 6;
  const Network net = electrical_network(n, 0.8, 1.0);
  const GaussianStream stream(31, 2);
  NetworkState a = make_initial_state(net, UniformBoxLaw{}, stream);

  std::vector<std::uint32_t> perm{3, 1, 5, 0, 4, 2};
  NetworkState b(net.sizes);
  for (std::size_t slot = 0; slot < n; ++slot) {
    b.set_neuron(slot, a.neuron(perm[slot]));
  }
  b.set_labels(perm);

  ContractNoise noise_a(31, 2), noise_b(31, 2);
  const StepConfig cfg{0.01, 2.0};
  const SimulationResult ra = simulate(net, cfg, std::move(a), noise_a);
  const SimulationResult rb = simulate(net, cfg, std::move(b), noise_b);
  for (std::size_t slot = 0; slot < n; ++slot) {
    CHECK(rb.final_state.v[slot] == ra.final_state.v[perm[slot]]);
    CHECK(rb.final_state.m[slot] == ra.final_state.m[perm[slot]]);
    CHECK(rb.final_state.n[slot] == ra.final_state.n[perm[slot]]);
    CHECK(rb.final_state.h[slot] == ra.final_state.h[perm[slot]]);
    CHECK(rb.final_state.y[slot] == ra.final_state.y[perm[slot]]);
  }
}

TEST_CASE("strong error study: errors shrink with dt and the fit is exposed") {
  StrongErrorConfig cfg;
  cfg.network = electrical_network(2, 1.0, 1.0);
  cfg.coarsest_dt = 0.04;
  cfg.levels = 3;
  cfg.reference_refinement = 16;
  cfg.t_end = 2.0;
  cfg.paths = 40;
  cfg.seed = 11;
  const StrongErrorResult res = strong_error_study(cfg);
  REQUIRE(res.levels.size() == 3);
  CHECK(res.levels[0].rms_error > res.levels[2].rms_error);
  REQUIRE(res.order_fit.has_value());
  // Wiring smoke only: at this toy scale the drift error still dominates, so
  // the slope lands well above 1/2; the pinned-order measurement is the
  // acceptance suite's convergence study.
  CHECK(res.order_fit->slope > 0.2);
  CHECK(res.order_fit->slope < 2.2);

  StrongErrorConfig quiet = cfg;
  quiet.network = electrical_network(2, 0.0, 1.0);
  quiet.paths = 3;
  const StrongErrorResult res0 = strong_error_study(quiet);
  CHECK_FALSE(res0.order_fit.has_value());
  for (const auto& level : res0.levels) {
    CHECK(level.projection_frequency == 0.0);
  }

  StrongErrorConfig bad = cfg;
  bad.levels = 2;
  CHECK_THROWS_AS(strong_error_study(bad), std::invalid_argument);
}
