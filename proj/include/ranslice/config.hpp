#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ranslice/agents.hpp"
#include "ranslice/energy.hpp"
#include "ranslice/traffic.hpp"

namespace ranslice {

struct TraceConfig {
  std::string source = "synthetic";  // "synthetic" | "csv"
  std::string csv_path;
  std::uint64_t seed = 42;
  SyntheticProfile profile;  // doubles as the sidecar schema for csv traces

  bool operator==(const TraceConfig&) const = default;
};

struct ExperimentConfig {
  TraceConfig trace;
  PowerParams power;
  double reward_energy_scale = 1.0;
  bool offload_to_eco = true;
  bool eco_fallback = true;
  std::vector<std::string> agents;
  std::vector<double> betas = {5.0, 1.0, 0.8};
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  int train_steps = 1000;
  double sadi_minutes = 10.0;
  int rolling_window = 50;
  AgentParams agent_params;
  std::string output_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

// Stock experiment: default profile, all six agents, beta in {5, 1, 0.8}.
ExperimentConfig default_config();

// JSON round-trip with field-path error messages; absent keys keep defaults.
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& config, const std::filesystem::path& path);

// Builds the trace the config describes (synthetic or csv-ingested).
TrafficTrace make_trace(const TraceConfig& config);

}  // namespace ranslice
