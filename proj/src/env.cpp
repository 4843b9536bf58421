#include "ranslice/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace ranslice {

std::vector<Configuration> action_space(const std::vector<SliceSpec>& slices) {
  validate_slices(slices);
  std::vector<int> toggled;  // non-eco ids, ascending
  for (const SliceSpec& s : slices)
    if (!s.is_eco) toggled.push_back(s.slice_id);
  if (toggled.size() > 20) throw std::invalid_argument("too many slices to enumerate");
  const int eco = eco_index(slices);
  std::vector<Configuration> space;
  space.reserve(std::size_t{1} << toggled.size());
  for (std::uint32_t mask = 0; mask < (1u << toggled.size()); ++mask) {
    Configuration config;
    config.active.assign(slices.size(), 0);
    config.active[static_cast<std::size_t>(eco)] = 1;
    for (std::size_t j = 0; j < toggled.size(); ++j)
      if (mask >> j & 1u) config.active[static_cast<std::size_t>(toggled[j])] = 1;
    space.push_back(std::move(config));
  }
  return space;
}

std::vector<double> carried_load_portion(const TrafficTrace& trace, int tau,
                                         const Configuration& config, bool offload_to_eco) {
  if (tau < 0 || tau >= trace.sadi_count) throw std::out_of_range("sadi index out of range");
  if (config.active.size() != trace.slices.size())
    throw std::invalid_argument("configuration size mismatch");
  const int eco = eco_index(trace.slices);
  if (!config.is_active(eco)) throw std::invalid_argument("the eco slice cannot be deactivated");

  const auto& loads = trace.loads[static_cast<std::size_t>(tau)];
  std::vector<double> carried(trace.slices.size(), 0.0);
  for (std::size_t i = 0; i < carried.size(); ++i)
    if (config.is_active(static_cast<int>(i))) carried[i] = loads[i];
  if (offload_to_eco)
    for (std::size_t i = 0; i < carried.size(); ++i)
      if (!config.is_active(static_cast<int>(i)))
        carried[static_cast<std::size_t>(eco)] += loads[i];

  // Normalizing by the carried total keeps the portions on [0, 1] whether or
  // not dropped load leaves the station.
  double total = 0.0;
  for (double c : carried) total += c;
  if (!(total > 0.0)) throw std::domain_error("no carried load at sadi " + std::to_string(tau));
  for (double& c : carried) c /= total;
  return carried;
}

namespace {

struct ArmOutcome {
  double power = 0.0;
  double qos = 0.0;
  double reward = 0.0;
};

ArmOutcome evaluate_arm(const TrafficTrace& trace, int tau, const Configuration& config,
                        const EnvConfig& cfg) {
  const auto rho = carried_load_portion(trace, tau, config, cfg.offload_to_eco);
  ArmOutcome out;
  out.power = base_station_power(config, trace.slices, rho, cfg.power);
  out.qos = evaluate_qos(trace, tau, config, cfg.eco_fallback).station;
  out.reward = cfg.reward_energy_scale / out.power + cfg.beta * out.qos;
  return out;
}

}  // namespace

StepOutcome step(const TrafficTrace& trace, int tau, int action_index, const EnvConfig& cfg) {
  if (!(cfg.reward_energy_scale > 0.0))
    throw std::invalid_argument("reward_energy_scale must be positive");
  if (cfg.beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  const auto space = action_space(trace.slices);
  if (action_index < 0 || action_index >= static_cast<int>(space.size()))
    throw std::out_of_range("action index out of range");

  StepOutcome out;
  out.tau = tau;
  out.action_index = action_index;
  out.action = space[static_cast<std::size_t>(action_index)];
  out.all_rewards.reserve(space.size());
  for (std::size_t a = 0; a < space.size(); ++a) {
    const ArmOutcome arm = evaluate_arm(trace, tau, space[a], cfg);
    out.all_rewards.push_back(arm.reward);
    if (static_cast<int>(a) == action_index) {
      out.power_watts = arm.power;
      out.qos = arm.qos;
      out.reward = arm.reward;
    }
  }
  out.best_reward = *std::max_element(out.all_rewards.begin(), out.all_rewards.end());
  out.regret_step = out.best_reward - out.reward;
  return out;
}

double cumulative_regret(std::span<const StepOutcome> outcomes) {
  double total = 0.0;
  for (const StepOutcome& o : outcomes) total += o.regret_step;
  return total;
}

}  // namespace ranslice
