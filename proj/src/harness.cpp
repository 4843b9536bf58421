#include "ranslice/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "csv.hpp"

namespace ranslice {
namespace {

namespace fs = std::filesystem;
using steady = std::chrono::steady_clock;

// FNV-1a; std::hash is not stable across builds.
std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string cell_suffix(const std::string& agent, double beta, std::uint64_t seed) {
  return agent + "_" + detail::format_double(beta) + "_" + std::to_string(seed);
}

void write_steps_csv(const fs::path& path, const std::vector<StepOutcome>& steps) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << "tau,action,power_watts,qos,reward,best_reward,regret\n";
  for (const StepOutcome& s : steps)
    out << s.tau << ',' << s.action_index << ',' << detail::format_double(s.power_watts) << ','
        << detail::format_double(s.qos) << ',' << detail::format_double(s.reward) << ','
        << detail::format_double(s.best_reward) << ',' << detail::format_double(s.regret_step)
        << '\n';
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

void write_loss_csv(const fs::path& path, const std::vector<double>& losses) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << "step,loss\n";
  for (std::size_t i = 0; i < losses.size(); ++i)
    out << i << ',' << detail::format_double(losses[i]) << '\n';
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

void write_summary_csv(const fs::path& path, const std::vector<RunSummary>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << "agent,beta,seed,mean_power_watts,total_energy_wh,mean_qos,cumulative_reward,"
         "cumulative_regret,energy_gain_vs_allactive,wall_time_select_s,wall_time_update_s\n";
  for (const RunSummary& r : rows)
    out << r.agent << ',' << detail::format_double(r.beta) << ',' << r.seed << ','
        << detail::format_double(r.mean_power_watts) << ','
        << detail::format_double(r.total_energy_wh) << ',' << detail::format_double(r.mean_qos)
        << ',' << detail::format_double(r.cumulative_reward) << ','
        << detail::format_double(r.cumulative_regret) << ','
        << detail::format_double(r.energy_gain_vs_allactive) << ','
        << detail::format_double(r.wall_time_select_s) << ','
        << detail::format_double(r.wall_time_update_s) << '\n';
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

EnvConfig env_from_config(const ExperimentConfig& cfg, double beta) {
  EnvConfig env;
  env.beta = beta;
  env.power = cfg.power;
  env.reward_energy_scale = cfg.reward_energy_scale;
  env.offload_to_eco = cfg.offload_to_eco;
  env.eco_fallback = cfg.eco_fallback;
  return env;
}

}  // namespace

std::uint64_t mix_agent_seed(std::uint64_t seed, const std::string& agent_key) {
  return splitmix64(seed ^ fnv1a(agent_key));
}

std::vector<double> rolling_mean(std::span<const double> series, int window) {
  if (window <= 0) throw std::invalid_argument("window must be positive");
  std::vector<double> out(series.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    sum += series[i];
    if (i >= static_cast<std::size_t>(window)) sum -= series[i - static_cast<std::size_t>(window)];
    const std::size_t n = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
    out[i] = sum / static_cast<double>(n);
  }
  return out;
}

CellResult run_cell(const TrafficTrace& trace, Agent& agent, const EnvConfig& env,
                    int train_steps, double sadi_minutes) {
  if (train_steps < 0) throw std::invalid_argument("train_steps must be >= 0");
  if (!(sadi_minutes > 0.0)) throw std::invalid_argument("sadi_minutes must be positive");
  const int num_actions = static_cast<int>(action_space(trace.slices).size());
  const int all_active_index = num_actions - 1;

  double select_seconds = 0.0;
  double update_seconds = 0.0;
  long select_calls = 0;
  long update_calls = 0;

  // The observation feeding step 0 is the all-active outcome of the SADI that
  // wraps around the start of the horizon.
  const StepOutcome warmup = step(trace, trace.sadi_count - 1, all_active_index, env);

  CellResult result;
  result.train_losses.reserve(static_cast<std::size_t>(train_steps));
  Observation obs{0, warmup.power_watts, warmup.qos};
  for (int j = 0; j < train_steps; ++j) {
    const int tau = j % trace.sadi_count;
    obs.sadi_of_day = tau % trace.sadis_per_day;
    const auto t0 = steady::now();
    const int action = agent.select(obs);
    const auto t1 = steady::now();
    const StepOutcome outcome = step(trace, tau, action, env);
    const auto t2 = steady::now();
    const double loss = agent.update(obs, action, outcome.reward);
    const auto t3 = steady::now();
    select_seconds += std::chrono::duration<double>(t1 - t0).count();
    update_seconds += std::chrono::duration<double>(t3 - t2).count();
    ++select_calls;
    ++update_calls;
    result.train_losses.push_back(loss);
    obs.prev_power_watts = outcome.power_watts;
    obs.prev_qos = outcome.qos;
  }

  agent.freeze();
  obs = Observation{0, warmup.power_watts, warmup.qos};
  result.eval_steps.reserve(static_cast<std::size_t>(trace.sadi_count));
  double power_sum = 0.0;
  double qos_sum = 0.0;
  double reward_sum = 0.0;
  double regret_sum = 0.0;
  for (int tau = 0; tau < trace.sadi_count; ++tau) {
    obs.sadi_of_day = tau % trace.sadis_per_day;
    const auto t0 = steady::now();
    const int action = agent.select(obs);
    const auto t1 = steady::now();
    select_seconds += std::chrono::duration<double>(t1 - t0).count();
    ++select_calls;
    StepOutcome outcome = step(trace, tau, action, env);
    obs.prev_power_watts = outcome.power_watts;
    obs.prev_qos = outcome.qos;
    power_sum += outcome.power_watts;
    qos_sum += outcome.qos;
    reward_sum += outcome.reward;
    regret_sum += outcome.regret_step;
    result.eval_steps.push_back(std::move(outcome));
  }

  RunSummary& s = result.summary;
  s.agent = agent.name();
  s.mean_power_watts = power_sum / trace.sadi_count;
  s.total_energy_wh = power_sum * (sadi_minutes / 60.0);
  s.mean_qos = qos_sum / trace.sadi_count;
  s.cumulative_reward = reward_sum;
  s.cumulative_regret = regret_sum;
  s.wall_time_select_s = select_calls ? select_seconds / select_calls * 1000.0 : 0.0;
  s.wall_time_update_s = update_calls ? update_seconds / update_calls * 1000.0 : 0.0;
  return result;
}

CellResult run_grid_cell(const ExperimentConfig& config, const TrafficTrace& trace,
                         const std::string& agent_key, double beta, std::uint64_t seed) {
  AgentContext ctx{static_cast<int>(action_space(trace.slices).size()), trace.sadis_per_day,
                   config.train_steps};
  const auto agent =
      make_agent(agent_key, ctx, config.agent_params, mix_agent_seed(seed, agent_key));
  CellResult result =
      run_cell(trace, *agent, env_from_config(config, beta), config.train_steps,
               config.sadi_minutes);
  result.summary.beta = beta;
  result.summary.seed = seed;
  return result;
}

std::vector<RunSummary> run_experiment(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  if (cfg.agents.empty()) cfg.agents = agent_keys();
  // The gain baseline has to exist in every (beta, seed) block.
  if (std::find(cfg.agents.begin(), cfg.agents.end(), "all_active") == cfg.agents.end())
    cfg.agents.insert(cfg.agents.begin(), "all_active");
  if (cfg.betas.empty() || cfg.seeds.empty())
    throw std::invalid_argument("betas and seeds must be non-empty");

  const TrafficTrace trace = make_trace(cfg.trace);
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);

  std::vector<RunSummary> summaries;
  for (double beta : cfg.betas)
    for (std::uint64_t seed : cfg.seeds) {
      double baseline_energy = 0.0;
      std::vector<std::size_t> block;
      for (const std::string& key : cfg.agents) {
        CellResult cell = run_grid_cell(cfg, trace, key, beta, seed);
        const std::string suffix = cell_suffix(key, beta, seed);
        write_steps_csv(dir / ("steps_" + suffix + ".csv"), cell.eval_steps);
        if (key.rfind("dcmab", 0) == 0)
          write_loss_csv(dir / ("loss_" + suffix + ".csv"), cell.train_losses);
        if (key == "all_active") baseline_energy = cell.summary.total_energy_wh;
        block.push_back(summaries.size());
        summaries.push_back(std::move(cell.summary));
      }
      for (std::size_t idx : block)
        summaries[idx].energy_gain_vs_allactive =
            1.0 - summaries[idx].total_energy_wh / baseline_energy;
    }
  write_summary_csv(dir / "summary.csv", summaries);
  return summaries;
}

std::vector<RunSummary> eco_ablation(const ExperimentConfig& config) {
  const fs::path dir = config.output_dir;

  ExperimentConfig with_eco = config;
  with_eco.agents = {"all_active", "thompson_c"};
  with_eco.offload_to_eco = true;
  with_eco.eco_fallback = true;
  with_eco.output_dir = (dir / "with_eco").string();

  // Deactivation without the eco slice's help: load is dropped and the
  // affected users go unserved.
  ExperimentConfig no_eco = with_eco;
  no_eco.offload_to_eco = false;
  no_eco.eco_fallback = false;
  no_eco.output_dir = (dir / "no_eco").string();

  std::vector<RunSummary> rows = run_experiment(with_eco);
  for (RunSummary row : run_experiment(no_eco)) {
    if (row.agent == "thompson_c") row.agent = "thompson_c_no_eco";
    else continue;  // the all-active baseline is identical in both worlds
    rows.push_back(std::move(row));
  }
  fs::create_directories(dir);
  write_summary_csv(dir / "ablation_summary.csv", rows);
  return rows;
}

}  // namespace ranslice
