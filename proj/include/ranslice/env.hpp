#pragma once

#include <span>
#include <vector>

#include "ranslice/energy.hpp"
#include "ranslice/qos.hpp"
#include "ranslice/slice.hpp"
#include "ranslice/traffic.hpp"

namespace ranslice {

struct EnvConfig {
  double beta = 1.0;
  PowerParams power;
  double reward_energy_scale = 1.0;
  // Move deactivated slices' load onto the eco slice (otherwise drop it).
  bool offload_to_eco = true;
  // Serve deactivated slices' users at the eco delay (otherwise score them
  // unsatisfied). The eco ablation turns both flags off.
  bool eco_fallback = true;
};

// What a policy may look at before choosing an arm.
struct Observation {
  int sadi_of_day = 0;
  double prev_power_watts = 0.0;
  double prev_qos = 0.0;
};

struct StepOutcome {
  int tau = 0;
  int action_index = 0;
  Configuration action;
  double power_watts = 0.0;
  double qos = 0.0;
  double reward = 0.0;
  double best_reward = 0.0;
  double regret_step = 0.0;
  std::vector<double> all_rewards;  // one reward per arm, same SADI
};

// Every activation configuration over the non-eco slices (the eco slice is
// always on), ordered by binary counting over non-eco slice ids: index 0
// keeps only the eco slice, the last index activates everything.
std::vector<Configuration> action_space(const std::vector<SliceSpec>& slices);

// Load portions actually carried after offloading (or dropping) deactivated
// slices' traffic; deactivated slices carry 0.
std::vector<double> carried_load_portion(const TrafficTrace& trace, int tau,
                                         const Configuration& config, bool offload_to_eco);

// Evaluates every arm on SADI tau and returns the chosen arm's outcome with
// per-arm rewards, the best reward and the one-step regret filled in.
StepOutcome step(const TrafficTrace& trace, int tau, int action_index, const EnvConfig& cfg);

double cumulative_regret(std::span<const StepOutcome> outcomes);

}  // namespace ranslice
