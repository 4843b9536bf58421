#include "ranslice/config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ranslice {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw std::invalid_argument("config: " + path + " " + why);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
  if (!j.is_object()) bad(path.empty() ? "top level" : path, "must be an object");
  for (const auto& item : j.items())
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end())
      bad(path + item.key(), "is not a recognized key");
}

template <typename T>
T fetch(const json& j, const char* key, T fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(path + key, "has the wrong type");
  }
}

SliceTrafficProfile slice_from_json(const json& j, int index, const std::string& path) {
  check_keys(j,
             {"name", "psi", "delta_ms", "is_eco", "mean_load", "daily_amplitude",
              "half_day_amplitude", "phase", "noise_std", "users_min", "users_max",
              "delay_min_ms", "delay_max_ms", "background_load"},
             path);
  SliceTrafficProfile s;
  s.spec.slice_id = index;  // ids follow array order
  s.spec.name = fetch<std::string>(j, "name", "", path);
  s.spec.psi = fetch(j, "psi", 1.0, path);
  s.spec.delta_ms = fetch(j, "delta_ms", 1.0, path);
  s.spec.is_eco = fetch(j, "is_eco", false, path);
  s.mean_load = fetch(j, "mean_load", 0.0, path);
  s.daily_amplitude = fetch(j, "daily_amplitude", 0.0, path);
  s.half_day_amplitude = fetch(j, "half_day_amplitude", 0.0, path);
  s.phase = fetch(j, "phase", 0.0, path);
  s.noise_std = fetch(j, "noise_std", 0.0, path);
  s.users_min = fetch(j, "users_min", 0, path);
  s.users_max = fetch(j, "users_max", 0, path);
  s.delay_min_ms = fetch(j, "delay_min_ms", 1.0, path);
  s.delay_max_ms = fetch(j, "delay_max_ms", 1.0, path);
  s.background_load = fetch(j, "background_load", 0.0, path);
  return s;
}

json slice_to_json(const SliceTrafficProfile& s) {
  json j;
  j["name"] = s.spec.name;
  j["psi"] = s.spec.psi;
  j["delta_ms"] = s.spec.delta_ms;
  j["is_eco"] = s.spec.is_eco;
  j["mean_load"] = s.mean_load;
  j["daily_amplitude"] = s.daily_amplitude;
  j["half_day_amplitude"] = s.half_day_amplitude;
  j["phase"] = s.phase;
  j["noise_std"] = s.noise_std;
  j["users_min"] = s.users_min;
  j["users_max"] = s.users_max;
  j["delay_min_ms"] = s.delay_min_ms;
  j["delay_max_ms"] = s.delay_max_ms;
  j["background_load"] = s.background_load;
  return j;
}

SyntheticProfile profile_from_json(const json& j, const std::string& path) {
  check_keys(j, {"sadi_count", "sadis_per_day", "eco_background_fraction", "slices"}, path);
  SyntheticProfile p = SyntheticProfile::defaults();
  p.sadi_count = fetch(j, "sadi_count", p.sadi_count, path);
  p.sadis_per_day = fetch(j, "sadis_per_day", p.sadis_per_day, path);
  p.eco_background_fraction =
      fetch(j, "eco_background_fraction", p.eco_background_fraction, path);
  if (j.contains("slices")) {
    const json& arr = j.at("slices");
    if (!arr.is_array()) bad(path + "slices", "must be an array");
    p.slices.clear();
    for (std::size_t i = 0; i < arr.size(); ++i)
      p.slices.push_back(slice_from_json(
          arr[i], static_cast<int>(i), path + "slices[" + std::to_string(i) + "]."));
  }
  return p;
}

json profile_to_json(const SyntheticProfile& p) {
  json j;
  j["sadi_count"] = p.sadi_count;
  j["sadis_per_day"] = p.sadis_per_day;
  j["eco_background_fraction"] = p.eco_background_fraction;
  j["slices"] = json::array();
  for (const SliceTrafficProfile& s : p.slices) j["slices"].push_back(slice_to_json(s));
  return j;
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.trace.profile = SyntheticProfile::defaults();
  cfg.agents = agent_keys();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config '" + path.string() + "': " + e.what());
  }
  check_keys(j,
             {"trace", "power", "reward_energy_scale", "offload_to_eco", "eco_fallback",
              "agents", "betas", "seeds", "train_steps", "sadi_minutes", "rolling_window",
              "agent_params", "output_dir"},
             "");
  ExperimentConfig cfg = default_config();
  if (j.contains("trace")) {
    const json& t = j.at("trace");
    check_keys(t, {"source", "csv_path", "seed", "profile"}, "trace.");
    cfg.trace.source = fetch<std::string>(t, "source", cfg.trace.source, "trace.");
    cfg.trace.csv_path = fetch<std::string>(t, "csv_path", cfg.trace.csv_path, "trace.");
    cfg.trace.seed = fetch(t, "seed", cfg.trace.seed, "trace.");
    if (t.contains("profile")) cfg.trace.profile = profile_from_json(t.at("profile"), "trace.profile.");
    if (cfg.trace.source != "synthetic" && cfg.trace.source != "csv")
      bad("trace.source", "must be 'synthetic' or 'csv'");
  }
  if (j.contains("power")) {
    const json& p = j.at("power");
    check_keys(p, {"p_static_watts", "p_fixed_watts", "p_dynamic_watts"}, "power.");
    cfg.power.p_static_watts = fetch(p, "p_static_watts", cfg.power.p_static_watts, "power.");
    cfg.power.p_fixed_watts = fetch(p, "p_fixed_watts", cfg.power.p_fixed_watts, "power.");
    cfg.power.p_dynamic_watts = fetch(p, "p_dynamic_watts", cfg.power.p_dynamic_watts, "power.");
  }
  cfg.reward_energy_scale = fetch(j, "reward_energy_scale", cfg.reward_energy_scale, "");
  cfg.offload_to_eco = fetch(j, "offload_to_eco", cfg.offload_to_eco, "");
  cfg.eco_fallback = fetch(j, "eco_fallback", cfg.eco_fallback, "");
  cfg.agents = fetch(j, "agents", cfg.agents, "");
  cfg.betas = fetch(j, "betas", cfg.betas, "");
  cfg.seeds = fetch(j, "seeds", cfg.seeds, "");
  cfg.train_steps = fetch(j, "train_steps", cfg.train_steps, "");
  cfg.sadi_minutes = fetch(j, "sadi_minutes", cfg.sadi_minutes, "");
  cfg.rolling_window = fetch(j, "rolling_window", cfg.rolling_window, "");
  if (j.contains("agent_params")) {
    const json& a = j.at("agent_params");
    check_keys(a, {"epsilon", "epsilon_decay", "alpha", "m", "phi", "literal_update"},
               "agent_params.");
    cfg.agent_params.epsilon = fetch(a, "epsilon", cfg.agent_params.epsilon, "agent_params.");
    cfg.agent_params.epsilon_decay =
        fetch(a, "epsilon_decay", cfg.agent_params.epsilon_decay, "agent_params.");
    cfg.agent_params.alpha = fetch(a, "alpha", cfg.agent_params.alpha, "agent_params.");
    cfg.agent_params.m = fetch(a, "m", cfg.agent_params.m, "agent_params.");
    cfg.agent_params.phi = fetch(a, "phi", cfg.agent_params.phi, "agent_params.");
    cfg.agent_params.literal_update =
        fetch(a, "literal_update", cfg.agent_params.literal_update, "agent_params.");
  }
  cfg.output_dir = fetch<std::string>(j, "output_dir", cfg.output_dir, "");

  const auto known = agent_keys();
  for (const std::string& key : cfg.agents)
    if (std::find(known.begin(), known.end(), key) == known.end())
      bad("agents", "contains unknown agent '" + key + "'");
  if (cfg.train_steps <= 0) bad("train_steps", "must be positive");
  if (!(cfg.sadi_minutes > 0.0)) bad("sadi_minutes", "must be positive");
  if (cfg.rolling_window <= 0) bad("rolling_window", "must be positive");
  for (double beta : cfg.betas)
    if (beta < 0.0) bad("betas", "must be >= 0");
  return cfg;
}

void save_config(const ExperimentConfig& cfg, const std::filesystem::path& path) {
  json j;
  j["trace"]["source"] = cfg.trace.source;
  j["trace"]["csv_path"] = cfg.trace.csv_path;
  j["trace"]["seed"] = cfg.trace.seed;
  j["trace"]["profile"] = profile_to_json(cfg.trace.profile);
  j["power"]["p_static_watts"] = cfg.power.p_static_watts;
  j["power"]["p_fixed_watts"] = cfg.power.p_fixed_watts;
  j["power"]["p_dynamic_watts"] = cfg.power.p_dynamic_watts;
  j["reward_energy_scale"] = cfg.reward_energy_scale;
  j["offload_to_eco"] = cfg.offload_to_eco;
  j["eco_fallback"] = cfg.eco_fallback;
  j["agents"] = cfg.agents;
  j["betas"] = cfg.betas;
  j["seeds"] = cfg.seeds;
  j["train_steps"] = cfg.train_steps;
  j["sadi_minutes"] = cfg.sadi_minutes;
  j["rolling_window"] = cfg.rolling_window;
  j["agent_params"]["epsilon"] = cfg.agent_params.epsilon;
  j["agent_params"]["epsilon_decay"] = cfg.agent_params.epsilon_decay;
  j["agent_params"]["alpha"] = cfg.agent_params.alpha;
  j["agent_params"]["m"] = cfg.agent_params.m;
  j["agent_params"]["phi"] = cfg.agent_params.phi;
  j["agent_params"]["literal_update"] = cfg.agent_params.literal_update;
  j["output_dir"] = cfg.output_dir;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

TrafficTrace make_trace(const TraceConfig& cfg) {
  if (cfg.source == "synthetic") return generate_synthetic(cfg.seed, cfg.profile);
  if (cfg.source == "csv") {
    if (cfg.csv_path.empty())
      throw std::invalid_argument("config: trace.csv_path required for a csv trace");
    return ingest_csv(cfg.csv_path, cfg.profile);
  }
  throw std::invalid_argument("config: trace.source must be 'synthetic' or 'csv'");
}

}  // namespace ranslice
