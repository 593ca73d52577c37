#include "hhnet/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace hhnet {

using nlohmann::json;

const char* run_mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::Trajectory: return "trajectory";
    case RunMode::Ensemble: return "ensemble";
    case RunMode::SingleNeuronOde: return "single_neuron_ode";
    case RunMode::Convergence: return "convergence";
    case RunMode::Chaos: return "chaos";
  }
  return "?";
}

Network RunConfig::network() const {
  Network net;
  for (const auto& pop : populations) {
    net.sizes.push_back(pop.size);
    net.populations.push_back(pop.params);
  }
  net.coupling = coupling;
  return net;
}

namespace {

class Reader {
 public:
  explicit Reader(std::vector<ConfigError>& errors) : errors_(errors) {}

  void error(const std::string& path, const std::string& message) {
    errors_.push_back({path, message});
  }

  void check_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
      error(path, "expected an object");
      return;
    }
    const std::set<std::string> allowed_set(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
      (void)value;
      if (!allowed_set.count(key)) {
        error(path + "." + key, "unknown key");
      }
    }
  }

  bool has(const json& obj, const char* key) const {
    return obj.is_object() && obj.contains(key);
  }

  double number(const json& obj, const char* key, const std::string& path,
                bool required, double fallback) {
    if (!has(obj, key)) {
      if (required) error(path + "." + key, "missing required field");
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
      error(path + "." + key, "expected a number");
      return fallback;
    }
    return v.get<double>();
  }

  std::uint64_t uinteger(const json& obj, const char* key, const std::string& path,
                         bool required, std::uint64_t fallback) {
    if (!has(obj, key)) {
      if (required) error(path + "." + key, "missing required field");
      return fallback;
    }
    const json& v = obj.at(key);
    if (!(v.is_number_unsigned() ||
          (v.is_number_integer() && v.get<std::int64_t>() >= 0))) {
      error(path + "." + key, "expected a non-negative integer");
      return fallback;
    }
    return v.get<std::uint64_t>();
  }

  bool boolean(const json& obj, const char* key, const std::string& path,
               bool fallback) {
    if (!has(obj, key)) {
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      error(path + "." + key, "expected a boolean");
      return fallback;
    }
    return v.get<bool>();
  }

  std::string text(const json& obj, const char* key, const std::string& path,
                   bool required, const std::string& fallback) {
    if (!has(obj, key)) {
      if (required) error(path + "." + key, "missing required field");
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) {
      error(path + "." + key, "expected a string");
      return fallback;
    }
    return v.get<std::string>();
  }

 private:
  std::vector<ConfigError>& errors_;
};

std::vector<std::vector<double>> read_matrix(Reader& r, const json& obj,
                                             const char* key, const std::string& path,
                                             std::size_t pops, double fallback) {
  std::vector<std::vector<double>> out(pops, std::vector<double>(pops, fallback));
  if (!r.has(obj, key)) {
    r.error(path + "." + key, "missing required field");
    return out;
  }
  const json& mat = obj.at(key);
  const std::string mat_path = path + "." + key;
  if (!mat.is_array() || mat.size() != pops) {
    r.error(mat_path, "expected a " + std::to_string(pops) + "x" +
                          std::to_string(pops) + " matrix");
    return out;
  }
  for (std::size_t i = 0; i < pops; ++i) {
    const json& row = mat.at(i);
    if (!row.is_array() || row.size() != pops) {
      r.error(mat_path + "[" + std::to_string(i) + "]", "expected a row of length " +
                                                            std::to_string(pops));
      continue;
    }
    for (std::size_t j = 0; j < pops; ++j) {
      if (!row.at(j).is_number()) {
        r.error(mat_path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                "expected a number");
        continue;
      }
      out[i][j] = row.at(j).get<double>();
    }
  }
  return out;
}

RateSpec read_rates(Reader& r, const json& obj, const std::string& path) {
  RateSpec rates = RateSpec::hodgkin_huxley();
  auto ion = [&](const char* key, auto& target) {
    if (!r.has(obj, key)) {
      r.error(path + "." + key, "missing required field");
      return;
    }
    const json& g = obj.at(key);
    const std::string p = path + "." + key;
    r.check_keys(g, p, {"a_r", "lambda_r", "v_r", "a_d", "lambda_d", "v_d"});
    target.a_r = r.number(g, "a_r", p, true, target.a_r);
    target.lambda_r = r.number(g, "lambda_r", p, true, target.lambda_r);
    target.v_r = r.number(g, "v_r", p, true, target.v_r);
    target.a_d = r.number(g, "a_d", p, true, target.a_d);
    target.lambda_d = r.number(g, "lambda_d", p, true, target.lambda_d);
    target.v_d = r.number(g, "v_d", p, true, target.v_d);
  };
  r.check_keys(obj, path, {"m", "n", "h", "y"});
  ion("m", rates.m);
  ion("n", rates.n);
  ion("h", rates.h);
  if (r.has(obj, "y")) {
    const json& g = obj.at("y");
    const std::string p = path + ".y";
    r.check_keys(g, p, {"a_r", "t_max", "lambda", "v_t", "a_d"});
    rates.y.a_r = r.number(g, "a_r", p, true, rates.y.a_r);
    rates.y.t_max = r.number(g, "t_max", p, true, rates.y.t_max);
    rates.y.lambda = r.number(g, "lambda", p, true, rates.y.lambda);
    rates.y.v_t = r.number(g, "v_t", p, true, rates.y.v_t);
    rates.y.a_d = r.number(g, "a_d", p, true, rates.y.a_d);
  } else {
    r.error(path + ".y", "missing required field");
  }
  return rates;
}

PopulationConfig read_population(Reader& r, const json& obj, const std::string& path) {
  PopulationConfig pop;
  r.check_keys(obj, path,
               {"name", "size", "g_na", "g_k", "g_l", "v_na", "v_k", "v_l", "i_ext",
                "sigma", "chi_amplitude", "rates"});
  pop.name = r.text(obj, "name", path, true, pop.name);
  pop.size = r.uinteger(obj, "size", path, true, 1);
  if (pop.size < 1) {
    r.error(path + ".size", "population size must be >= 1");
    pop.size = 1;
  }
  PopulationParams& p = pop.params;
  p.g_na = r.number(obj, "g_na", path, true, 0.0);
  p.g_k = r.number(obj, "g_k", path, true, 0.0);
  p.g_l = r.number(obj, "g_l", path, true, 0.0);
  p.v_na = r.number(obj, "v_na", path, true, 0.0);
  p.v_k = r.number(obj, "v_k", path, true, 0.0);
  p.v_l = r.number(obj, "v_l", path, true, 0.0);
  p.i_ext = r.number(obj, "i_ext", path, true, 0.0);
  p.noise.sigma = r.number(obj, "sigma", path, true, 0.0);
  p.noise.chi_amplitude = r.number(obj, "chi_amplitude", path, false, 0.1);
  if (!(p.g_na >= 0.0)) r.error(path + ".g_na", "must be >= 0");
  if (!(p.g_k >= 0.0)) r.error(path + ".g_k", "must be >= 0");
  if (!(p.g_l >= 0.0)) r.error(path + ".g_l", "must be >= 0");
  if (!(p.noise.sigma >= 0.0)) r.error(path + ".sigma", "must be >= 0");
  if (!(p.noise.chi_amplitude > 0.0)) r.error(path + ".chi_amplitude", "must be > 0");
  if (r.has(obj, "rates")) {
    p.rates = read_rates(r, obj.at("rates"), path + ".rates");
    try {
      p.rates.validate();
    } catch (const std::exception& e) {
      r.error(path + ".rates", e.what());
    }
  }
  return pop;
}

InitialLaw read_initial_law(Reader& r, const json& obj, const std::string& path,
                            std::size_t total_neurons) {
  const std::string kind = r.text(obj, "kind", path, true, "uniform_box");
  if (kind == "uniform_box") {
    r.check_keys(obj, path, {"kind", "v_min", "v_max"});
    UniformBoxLaw law;
    law.v_min = r.number(obj, "v_min", path, false, law.v_min);
    law.v_max = r.number(obj, "v_max", path, false, law.v_max);
    if (!(law.v_max >= law.v_min)) {
      r.error(path, "v_max must be >= v_min");
    }
    return law;
  }
  if (kind == "rest_state") {
    r.check_keys(obj, path, {"kind", "v_rest"});
    RestStateLaw law;
    law.v_rest = r.number(obj, "v_rest", path, false, law.v_rest);
    return law;
  }
  if (kind == "explicit") {
    r.check_keys(obj, path, {"kind", "states"});
    ExplicitLaw law;
    if (!r.has(obj, "states") || !obj.at("states").is_array()) {
      r.error(path + ".states", "expected an array of [v,m,n,h,y] states");
      return law;
    }
    const json& states = obj.at("states");
    for (std::size_t i = 0; i < states.size(); ++i) {
      const json& s = states.at(i);
      const std::string sp = path + ".states[" + std::to_string(i) + "]";
      if (!s.is_array() || s.size() != kComponentCount) {
        r.error(sp, "expected 5 components [v,m,n,h,y]");
        continue;
      }
      NeuronState state;
      for (int c = 0; c < kComponentCount; ++c) {
        if (!s.at(c).is_number()) {
          r.error(sp, "expected numeric components");
          break;
        }
        state.set_component(c, s.at(c).get<double>());
      }
      for (int c = 1; c < kComponentCount; ++c) {
        if (!(state.component(c) >= 0.0 && state.component(c) <= 1.0)) {
          r.error(sp, "gate fractions must lie in [0,1]");
          break;
        }
      }
      law.states.push_back(state);
    }
    if (total_neurons > 0 && law.states.size() != total_neurons) {
      r.error(path + ".states", "expected one state per neuron (" +
                                    std::to_string(total_neurons) + ")");
    }
    return law;
  }
  r.error(path + ".kind", "unknown initial law (uniform_box | rest_state | explicit)");
  return UniformBoxLaw{};
}

}  // namespace

ParseResult parse_config(const json& j) {
  ParseResult result;
  Reader r(result.errors);
  if (!j.is_object()) {
    r.error("$", "top-level config must be a JSON object");
    return result;
  }
  RunConfig cfg;
  r.check_keys(j, "$",
               {"schema_version", "scenario", "mode", "seed", "replicas", "step",
                "populations", "coupling", "initial_law", "output", "convergence",
                "chaos"});

  const std::uint64_t version = r.uinteger(j, "schema_version", "$", true, 1);
  if (version != 1) {
    r.error("$.schema_version", "unsupported schema version");
  }
  cfg.schema_version = static_cast<int>(version);
  cfg.scenario = r.text(j, "scenario", "$", false, cfg.scenario);

  const std::string mode = r.text(j, "mode", "$", true, "trajectory");
  if (mode == "trajectory") {
    cfg.mode = RunMode::Trajectory;
  } else if (mode == "ensemble") {
    cfg.mode = RunMode::Ensemble;
  } else if (mode == "single_neuron_ode") {
    cfg.mode = RunMode::SingleNeuronOde;
  } else if (mode == "convergence") {
    cfg.mode = RunMode::Convergence;
  } else if (mode == "chaos") {
    cfg.mode = RunMode::Chaos;
  } else {
    r.error("$.mode", "unknown mode");
  }

  // Seeds are mandatory: runs never draw entropy from the environment.
  cfg.seed = r.uinteger(j, "seed", "$", true, 0);
  cfg.replicas = r.uinteger(j, "replicas", "$", false, 1);
  if (cfg.replicas < 1) {
    r.error("$.replicas", "replica count must be >= 1");
  }

  if (r.has(j, "step")) {
    const json& s = j.at("step");
    r.check_keys(s, "$.step", {"dt", "t_end", "scheme"});
    cfg.step.dt = r.number(s, "dt", "$.step", true, 0.01);
    cfg.step.t_end = r.number(s, "t_end", "$.step", true, 400.0);
    const std::string scheme = r.text(s, "scheme", "$.step", false, "epes");
    if (scheme == "epes") {
      cfg.step.scheme = Scheme::Epes;
    } else if (scheme == "euler_maruyama") {
      cfg.step.scheme = Scheme::EulerMaruyama;
    } else {
      r.error("$.step.scheme", "unknown scheme (epes | euler_maruyama)");
    }
    try {
      cfg.step.step_count();
    } catch (const std::exception& e) {
      r.error("$.step", e.what());  // grid rule: t_end must be a multiple of dt
    }
  } else {
    r.error("$.step", "missing required field");
  }

  std::size_t total_neurons = 0;
  if (r.has(j, "populations") && j.at("populations").is_array() &&
      !j.at("populations").empty()) {
    const json& pops = j.at("populations");
    std::set<std::string> names;
    for (std::size_t i = 0; i < pops.size(); ++i) {
      const std::string path = "$.populations[" + std::to_string(i) + "]";
      PopulationConfig pop = read_population(r, pops.at(i), path);
      if (!names.insert(pop.name).second) {
        r.error(path + ".name", "duplicate population name");
      }
      total_neurons += pop.size;
      cfg.populations.push_back(std::move(pop));
    }
  } else {
    r.error("$.populations", "at least one population is required");
  }

  const std::size_t pop_count = std::max<std::size_t>(1, cfg.populations.size());
  if (r.has(j, "coupling")) {
    const json& c = j.at("coupling");
    r.check_keys(c, "$.coupling", {"j_e", "j_ch", "v_rev"});
    cfg.coupling.j_e = read_matrix(r, c, "j_e", "$.coupling", pop_count, 0.0);
    cfg.coupling.j_ch = read_matrix(r, c, "j_ch", "$.coupling", pop_count, 0.0);
    cfg.coupling.v_rev = read_matrix(r, c, "v_rev", "$.coupling", pop_count, 0.0);
    for (std::size_t i = 0; i < pop_count; ++i) {
      for (std::size_t jj = 0; jj < pop_count; ++jj) {
        if (!(cfg.coupling.j_e[i][jj] >= 0.0)) {
          r.error("$.coupling.j_e[" + std::to_string(i) + "][" + std::to_string(jj) + "]",
                  "must be >= 0");
        }
        if (!(cfg.coupling.j_ch[i][jj] >= 0.0)) {
          r.error("$.coupling.j_ch[" + std::to_string(i) + "][" + std::to_string(jj) +
                      "]",
                  "must be >= 0");
        }
      }
    }
  } else {
    r.error("$.coupling", "missing required field");
    cfg.coupling = CouplingSpec::none(pop_count);
  }

  if (r.has(j, "initial_law")) {
    cfg.initial_law = read_initial_law(r, j.at("initial_law"), "$.initial_law",
                                       total_neurons);
  } else {
    r.error("$.initial_law", "missing required field");
  }

  if (r.has(j, "output")) {
    const json& o = j.at("output");
    r.check_keys(o, "$.output", {"dir", "stride", "trajectory", "stats", "spikes"});
    cfg.output.dir = r.text(o, "dir", "$.output", false, cfg.output.dir);
    cfg.output.stride = r.uinteger(o, "stride", "$.output", false, cfg.output.stride);
    if (cfg.output.stride < 1) {
      r.error("$.output.stride", "stride must be >= 1");
      cfg.output.stride = 1;
    }
    cfg.output.trajectory = r.boolean(o, "trajectory", "$.output", cfg.output.trajectory);
    cfg.output.stats = r.boolean(o, "stats", "$.output", cfg.output.stats);
    cfg.output.spikes = r.boolean(o, "spikes", "$.output", cfg.output.spikes);
  }

  if (cfg.mode == RunMode::Convergence) {
    if (r.has(j, "convergence")) {
      const json& c = j.at("convergence");
      r.check_keys(c, "$.convergence",
                   {"coarsest_dt", "levels", "reference_refinement", "paths"});
      ConvergenceRunConfig study;
      study.coarsest_dt = r.number(c, "coarsest_dt", "$.convergence", true, 0.02);
      study.levels =
          static_cast<int>(r.uinteger(c, "levels", "$.convergence", true, 4));
      study.reference_refinement = static_cast<int>(
          r.uinteger(c, "reference_refinement", "$.convergence", true, 32));
      study.paths = r.uinteger(c, "paths", "$.convergence", true, 200);
      if (study.levels < 3) {
        r.error("$.convergence.levels", "at least 3 ladder levels are required");
      }
      cfg.convergence = study;
    } else {
      r.error("$.convergence", "required for mode=convergence");
    }
  } else if (r.has(j, "convergence")) {
    r.error("$.convergence", "only valid for mode=convergence");
  }

  if (cfg.mode == RunMode::Chaos) {
    if (r.has(j, "chaos")) {
      const json& c = j.at("chaos");
      r.check_keys(c, "$.chaos", {"n_ref", "ladder", "replicas", "w2_replicas"});
      ChaosRunConfig study;
      study.n_ref = r.uinteger(c, "n_ref", "$.chaos", true, 4096);
      study.replicas = r.uinteger(c, "replicas", "$.chaos", true, 8);
      study.w2_replicas = r.uinteger(c, "w2_replicas", "$.chaos", false, 3);
      if (r.has(c, "ladder") && c.at("ladder").is_array()) {
        study.ladder.clear();
        for (const auto& item : c.at("ladder")) {
          const bool ok = item.is_number_unsigned() ||
                          (item.is_number_integer() && item.get<std::int64_t>() >= 0);
          if (!ok || item.get<std::uint64_t>() < 2) {
            r.error("$.chaos.ladder", "ladder entries must be integers >= 2");
            break;
          }
          study.ladder.push_back(item.get<std::size_t>());
        }
      } else {
        r.error("$.chaos.ladder", "missing required field");
      }
      if (study.ladder.size() < 3) {
        r.error("$.chaos.ladder", "at least 3 ladder sizes are required");
      }
      for (std::size_t s : study.ladder) {
        if (s > study.n_ref) {
          r.error("$.chaos.ladder", "ladder sizes must not exceed n_ref");
          break;
        }
      }
      cfg.chaos = study;
    } else {
      r.error("$.chaos", "required for mode=chaos");
    }
  } else if (r.has(j, "chaos")) {
    r.error("$.chaos", "only valid for mode=chaos");
  }

  if (cfg.mode == RunMode::SingleNeuronOde && total_neurons != 1) {
    r.error("$.populations", "single_neuron_ode requires exactly one neuron");
  }
  if ((cfg.mode == RunMode::Convergence || cfg.mode == RunMode::Chaos) &&
      cfg.populations.size() != 1) {
    r.error("$.populations", "convergence and chaos studies use a single population");
  }

  if (result.errors.empty()) {
    result.config = std::move(cfg);
  }
  return result;
}

ParseResult parse_config_text(std::string_view text) {
  ParseResult result;
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    result.errors.push_back({"$", "invalid JSON"});
    return result;
  }
  return parse_config(j);
}

namespace {

json rates_to_json(const RateSpec& rates) {
  json j;
  auto ion = [](const auto& g) {
    return json{{"a_r", g.a_r},     {"lambda_r", g.lambda_r}, {"v_r", g.v_r},
                {"a_d", g.a_d},     {"lambda_d", g.lambda_d}, {"v_d", g.v_d}};
  };
  j["m"] = ion(rates.m);
  j["n"] = ion(rates.n);
  j["h"] = ion(rates.h);
  j["y"] = json{{"a_r", rates.y.a_r},
                {"t_max", rates.y.t_max},
                {"lambda", rates.y.lambda},
                {"v_t", rates.y.v_t},
                {"a_d", rates.y.a_d}};
  return j;
}

}  // namespace

json to_json(const RunConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  j["scenario"] = cfg.scenario;
  j["mode"] = run_mode_name(cfg.mode);
  j["seed"] = cfg.seed;
  j["replicas"] = cfg.replicas;
  j["step"] = {{"dt", cfg.step.dt},
               {"t_end", cfg.step.t_end},
               {"scheme", cfg.step.scheme == Scheme::Epes ? "epes" : "euler_maruyama"}};
  json pops = json::array();
  for (const auto& pop : cfg.populations) {
    json p;
    p["name"] = pop.name;
    p["size"] = pop.size;
    p["g_na"] = pop.params.g_na;
    p["g_k"] = pop.params.g_k;
    p["g_l"] = pop.params.g_l;
    p["v_na"] = pop.params.v_na;
    p["v_k"] = pop.params.v_k;
    p["v_l"] = pop.params.v_l;
    p["i_ext"] = pop.params.i_ext;
    p["sigma"] = pop.params.noise.sigma;
    p["chi_amplitude"] = pop.params.noise.chi_amplitude;
    p["rates"] = rates_to_json(pop.params.rates);
    pops.push_back(std::move(p));
  }
  j["populations"] = std::move(pops);
  j["coupling"] = {{"j_e", cfg.coupling.j_e},
                   {"j_ch", cfg.coupling.j_ch},
                   {"v_rev", cfg.coupling.v_rev}};
  if (const auto* box = std::get_if<UniformBoxLaw>(&cfg.initial_law)) {
    j["initial_law"] = {{"kind", "uniform_box"},
                        {"v_min", box->v_min},
                        {"v_max", box->v_max}};
  } else if (const auto* rest = std::get_if<RestStateLaw>(&cfg.initial_law)) {
    j["initial_law"] = {{"kind", "rest_state"}, {"v_rest", rest->v_rest}};
  } else {
    const auto& explicit_law = std::get<ExplicitLaw>(cfg.initial_law);
    json states = json::array();
    for (const NeuronState& s : explicit_law.states) {
      states.push_back(json::array({s.v, s.m, s.n, s.h, s.y}));
    }
    j["initial_law"] = {{"kind", "explicit"}, {"states", std::move(states)}};
  }
  j["output"] = {{"dir", cfg.output.dir},
                 {"stride", cfg.output.stride},
                 {"trajectory", cfg.output.trajectory},
                 {"stats", cfg.output.stats},
                 {"spikes", cfg.output.spikes}};
  if (cfg.convergence) {
    j["convergence"] = {{"coarsest_dt", cfg.convergence->coarsest_dt},
                        {"levels", cfg.convergence->levels},
                        {"reference_refinement", cfg.convergence->reference_refinement},
                        {"paths", cfg.convergence->paths}};
  }
  if (cfg.chaos) {
    j["chaos"] = {{"n_ref", cfg.chaos->n_ref},
                  {"ladder", cfg.chaos->ladder},
                  {"replicas", cfg.chaos->replicas},
                  {"w2_replicas", cfg.chaos->w2_replicas}};
  }
  return j;
}

namespace {

PopulationConfig hh_population(const char* name, std::size_t size, double i_ext,
                               double sigma) {
  PopulationConfig pop;
  pop.name = name;
  pop.size = size;
  pop.params = PopulationParams::hodgkin_huxley(i_ext, sigma);
  return pop;
}

RunConfig base_config(const std::string& scenario, std::uint64_t seed) {
  RunConfig cfg;
  cfg.scenario = scenario;
  cfg.seed = seed;
  return cfg;
}

std::string cell_tag(const std::string& prefix, const std::string& suffix) {
  return prefix + "_" + suffix;
}

std::string trim_number(double v) {
  std::ostringstream os;
  os << v;
  std::string s = os.str();
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig4", "fig5", "fig6", "fig7", "fig8", "convergence", "chaos"};
}

std::vector<PresetCell> preset_cells(const std::string& preset) {
  std::vector<PresetCell> cells;
  if (preset == "fig2") {
    // Single-neuron response regimes for I = 0, 10, 100, 200.
    for (double i_ext : {0.0, 10.0, 100.0, 200.0}) {
      RunConfig cfg = base_config("fig2", 20240201);
      cfg.mode = RunMode::SingleNeuronOde;
      cfg.step = {0.01, 400.0, Scheme::Epes};
      cfg.populations = {hh_population("main", 1, i_ext, 0.0)};
      cfg.coupling = CouplingSpec::single(0.0);
      cfg.initial_law = RestStateLaw{};
      cfg.output.stride = 10;
      cfg.output.spikes = true;
      cfg.output.stats = false;
      cells.push_back({cell_tag("fig2_I", trim_number(i_ext)), std::move(cfg)});
    }
  } else if (preset == "fig4") {
    // One trajectory per (N, sigma) cell under pure electrical coupling.
    for (std::size_t n : {10ull, 100ull, 1000ull, 10000ull}) {
      for (double sigma : {0.0, 0.5, 1.0}) {
        RunConfig cfg = base_config("fig4", 20240400);
        cfg.mode = RunMode::Trajectory;
        cfg.step = {0.01, 200.0, Scheme::Epes};
        cfg.populations = {hh_population("main", n, 25.0, sigma)};
        cfg.coupling = CouplingSpec::single(1.0);
        cfg.initial_law = UniformBoxLaw{};
        cfg.output.stride = n >= 1000 ? 100 : 10;
        cfg.output.stats = true;
        cells.push_back({cell_tag("fig4_N" + std::to_string(n), "sigma" +
                                      trim_number(sigma)),
                         std::move(cfg)});
      }
    }
  } else if (preset == "fig5") {
    // Replica-averaged dissipation of the empirical variance.
    for (std::size_t n : {10ull, 100ull, 1000ull}) {
      for (double sigma : {0.1, 0.5, 1.0}) {
        RunConfig cfg = base_config("fig5", 20240500);
        cfg.mode = RunMode::Ensemble;
        cfg.replicas = 500;
        cfg.step = {0.01, 50.0, Scheme::Epes};
        cfg.populations = {hh_population("main", n, 25.0, sigma)};
        cfg.coupling = CouplingSpec::single(1.0);
        cfg.initial_law = UniformBoxLaw{};
        cfg.output.stride = 5;
        cfg.output.trajectory = false;
        cells.push_back({cell_tag("fig5_N" + std::to_string(n), "sigma" +
                                      trim_number(sigma)),
                         std::move(cfg)});
      }
    }
  } else if (preset == "fig6") {
    // Two subpopulations of 50 neurons; coupling homogeneity varies per cell.
    auto two_pop = [&](const char* cell, double i2, double sigma2,
                       std::vector<std::vector<double>> j_e) {
      RunConfig cfg = base_config("fig6", 20240600);
      cfg.mode = RunMode::Trajectory;
      cfg.step = {0.01, 400.0, Scheme::Epes};
      cfg.populations = {hh_population("pop_a", 50, 25.0, 0.5),
                         hh_population("pop_b", 50, i2, sigma2)};
      cfg.coupling.j_e = std::move(j_e);
      cfg.coupling.j_ch = {{0.0, 0.0}, {0.0, 0.0}};
      cfg.coupling.v_rev = {{0.0, 0.0}, {0.0, 0.0}};
      cfg.initial_law = UniformBoxLaw{};
      cfg.output.stride = 10;
      cells.push_back({cell, std::move(cfg)});
    };
    two_pop("fig6_a_homogeneous", 10.0, 1.0, {{1.0, 1.0}, {1.0, 1.0}});
    two_pop("fig6_b_heterogeneous", 10.0, 1.0, {{1.0, 0.2}, {0.2, 1.0}});
    two_pop("fig6_c_equal_pops", 25.0, 0.5, {{0.2, 0.05}, {0.05, 0.2}});
  } else if (preset == "fig7" || preset == "fig8") {
    // Pure chemical synapses: inhibitory (V_rev = -75) or excitatory (0).
    // Low channel noise keeps the anti-phase clusters of the inhibitory
    // network crisp.
    const double v_rev = preset == "fig7" ? -75.0 : 0.0;
    RunConfig cfg = base_config(preset, preset == "fig7" ? 20240700 : 20240800);
    cfg.mode = RunMode::Trajectory;
    cfg.step = {0.01, 1000.0, Scheme::Epes};
    cfg.populations = {hh_population("main", 100, 25.0, 0.1)};
    cfg.coupling = CouplingSpec::single(0.0, 1.0, v_rev);
    cfg.initial_law = UniformBoxLaw{};
    cfg.output.stride = 10;
    cfg.output.spikes = true;
    cells.push_back({preset + "_network", std::move(cfg)});
  } else if (preset == "convergence") {
    RunConfig cfg = base_config("convergence", 20241000);
    cfg.mode = RunMode::Convergence;
    cfg.step = {0.02, 20.0, Scheme::Epes};
    cfg.populations = {hh_population("main", 10, 25.0, 1.0)};
    cfg.coupling = CouplingSpec::single(1.0);
    cfg.initial_law = UniformBoxLaw{};
    cfg.convergence = ConvergenceRunConfig{0.02, 4, 32, 200};
    cfg.output.trajectory = false;
    cfg.output.stats = false;
    cells.push_back({"convergence_study", std::move(cfg)});
  } else if (preset == "chaos") {
    RunConfig cfg = base_config("chaos", 20241100);
    cfg.mode = RunMode::Chaos;
    cfg.step = {0.01, 50.0, Scheme::Epes};
    cfg.populations = {hh_population("main", 1024, 25.0, 0.5)};
    cfg.coupling = CouplingSpec::single(1.0);
    cfg.initial_law = UniformBoxLaw{};
    cfg.chaos = ChaosRunConfig{4096, {16, 64, 256, 1024}, 8, 3};
    cfg.output.trajectory = false;
    cfg.output.stats = false;
    cells.push_back({"chaos_study", std::move(cfg)});
  } else {
    throw std::invalid_argument("unknown preset: " + preset);
  }
  return cells;
}

}  // namespace hhnet
