#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ranslice/agents.hpp"
#include "ranslice/config.hpp"
#include "ranslice/env.hpp"

namespace ranslice {

struct RunSummary {
  std::string agent;
  double beta = 0.0;
  std::uint64_t seed = 0;
  double mean_power_watts = 0.0;
  double total_energy_wh = 0.0;
  double mean_qos = 0.0;
  double cumulative_reward = 0.0;
  double cumulative_regret = 0.0;
  double energy_gain_vs_allactive = 0.0;
  double wall_time_select_s = 0.0;  // seconds per 1000 calls
  double wall_time_update_s = 0.0;
};

struct CellResult {
  RunSummary summary;
  std::vector<StepOutcome> eval_steps;  // frozen replay over the full horizon
  std::vector<double> train_losses;     // one entry per training step, as the agent reports
};

// Trailing mean over a window: out[i] = mean(series[max(0,i-w+1)..i]).
std::vector<double> rolling_mean(std::span<const double> series, int window);

// Trains the agent for train_steps SADIs (consumed cyclically), then replays
// the whole horizon with exploration frozen. energy_gain_vs_allactive is
// left at 0 for the caller to fill in.
CellResult run_cell(const TrafficTrace& trace, Agent& agent, const EnvConfig& env,
                    int train_steps, double sadi_minutes);

// One grid cell keyed by config values; applies the per-cell agent seed mix.
CellResult run_grid_cell(const ExperimentConfig& config, const TrafficTrace& trace,
                         const std::string& agent_key, double beta, std::uint64_t seed);

// Full (agent x beta x seed) grid. Writes summary.csv plus per-cell
// steps_<agent>_<beta>_<seed>.csv (and loss_... for loss-reporting agents)
// under config.output_dir, and returns the summaries in execution order.
std::vector<RunSummary> run_experiment(const ExperimentConfig& config);

// Runs thompson_c over the grid twice: as configured, and with the eco
// benefits turned off (loads dropped, deactivated users unsatisfied). The
// "without" rows carry the agent label thompson_c_no_eco.
std::vector<RunSummary> eco_ablation(const ExperimentConfig& config);

// Stable per-cell agent seed: mixes the grid seed with the agent key but not
// beta, so beta sweeps are paired experiments.
std::uint64_t mix_agent_seed(std::uint64_t seed, const std::string& agent_key);

}  // namespace ranslice
