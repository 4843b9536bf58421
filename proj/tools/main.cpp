#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ranslice/config.hpp"
#include "ranslice/harness.hpp"
#include "ranslice/traffic.hpp"

namespace fs = std::filesystem;
using namespace ranslice;

namespace {

ExperimentConfig load_or_default(const std::string& config_path) {
  return config_path.empty() ? default_config() : load_config(config_path);
}

void print_summary_table(const std::vector<RunSummary>& rows) {
  std::cout << std::left << std::setw(20) << "agent" << std::right << std::setw(7) << "beta"
            << std::setw(6) << "seed" << std::setw(12) << "power[W]" << std::setw(12)
            << "energy[Wh]" << std::setw(8) << "qos" << std::setw(12) << "cum_reward"
            << std::setw(12) << "cum_regret" << std::setw(9) << "gain" << '\n';
  for (const RunSummary& r : rows)
    std::cout << std::left << std::setw(20) << r.agent << std::right << std::fixed
              << std::setprecision(2) << std::setw(7) << r.beta << std::setw(6) << r.seed
              << std::setw(12) << r.mean_power_watts << std::setw(12) << r.total_energy_wh
              << std::setprecision(4) << std::setw(8) << r.mean_qos << std::setprecision(2)
              << std::setw(12) << r.cumulative_reward << std::setw(12) << r.cumulative_regret
              << std::setprecision(4) << std::setw(9) << r.energy_gain_vs_allactive << '\n';
  std::cout.unsetf(std::ios::fixed);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Re-reads a finished run directory: prints summary.csv and writes
// rolling_<cell>.csv files with smoothed reward/regret for each steps file.
int report(const fs::path& dir, int window) {
  const fs::path summary = dir / "summary.csv";
  if (fs::exists(summary)) {
    std::ifstream in(summary);
    std::string line;
    while (std::getline(in, line)) std::cout << line << '\n';
  } else {
    std::cout << "(no summary.csv in " << dir.string() << ")\n";
  }

  int written = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("steps_", 0) != 0 || entry.path().extension() != ".csv") continue;
    std::ifstream in(entry.path());
    std::string line;
    if (!std::getline(in, line)) continue;  // header
    std::vector<double> taus, rewards, regrets;
    while (std::getline(in, line)) {
      const auto f = split_fields(line);
      if (f.size() != 7) throw std::runtime_error(name + ": expected 7 fields");
      taus.push_back(std::stod(f[0]));
      rewards.push_back(std::stod(f[4]));
      regrets.push_back(std::stod(f[6]));
    }
    const auto smooth_reward = rolling_mean(rewards, window);
    const auto smooth_regret = rolling_mean(regrets, window);
    const fs::path out_path = dir / ("rolling_" + name.substr(6));
    std::ofstream out(out_path);
    out << "tau,reward_smoothed,regret_smoothed\n";
    for (std::size_t i = 0; i < taus.size(); ++i)
      out << static_cast<long>(taus[i]) << ',' << smooth_reward[i] << ',' << smooth_regret[i]
          << '\n';
    ++written;
  }
  std::cout << "wrote " << written << " rolling_*.csv files (window " << window << ") under "
            << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware RAN slice activation simulator"};
  app.require_subcommand(1);

  std::string gen_config, run_config, ablate_config;
  std::string gen_out = "trace.csv", gen_sidecar;
  std::uint64_t gen_seed = 0;
  std::string run_dir, ablate_dir, report_dir;
  int report_window = 0;

  auto* gen = app.add_subcommand("generate",
                                 "Write a synthetic demand trace as CSV plus a sidecar config "
                                 "that replays it exactly");
  gen->add_option("--config", gen_config, "Experiment config (JSON); defaults when omitted")
      ->check(CLI::ExistingFile);
  gen->add_option("-o,--out", gen_out, "Output CSV path");
  gen->add_option("--sidecar", gen_sidecar, "Sidecar config path (default: <out>.json)");
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "Overrides trace.seed");

  auto* run = app.add_subcommand("run", "Train and evaluate the configured agent grid");
  run->add_option("--config", run_config, "Experiment config (JSON); defaults when omitted")
      ->check(CLI::ExistingFile);
  run->add_option("-o,--out-dir", run_dir, "Overrides output_dir");

  auto* ablate = app.add_subcommand(
      "ablate", "Compare thompson_c with and without the eco slice's offload/fallback");
  ablate->add_option("--config", ablate_config, "Experiment config (JSON); defaults when omitted")
      ->check(CLI::ExistingFile);
  ablate->add_option("-o,--out-dir", ablate_dir, "Overrides output_dir");

  auto* rep = app.add_subcommand("report", "Summarize a finished run directory");
  rep->add_option("-d,--dir", report_dir, "Run directory")->required()->check(CLI::ExistingDirectory);
  rep->add_option("-w,--window", report_window, "Rolling window (default: config value or 50)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ExperimentConfig cfg = load_or_default(gen_config);
      if (gen_seed_opt->count() > 0) cfg.trace.seed = gen_seed;
      const TrafficTrace trace = make_trace(cfg.trace);
      export_csv(trace, gen_out);
      ExperimentConfig sidecar = cfg;
      sidecar.trace.source = "csv";
      sidecar.trace.csv_path = gen_out;
      sidecar.trace.profile.sadi_count = trace.sadi_count;
      sidecar.trace.profile.sadis_per_day = trace.sadis_per_day;
      for (std::size_t i = 0; i < sidecar.trace.profile.slices.size(); ++i)
        sidecar.trace.profile.slices[i].background_load = trace.background_load[i];
      const std::string sidecar_path = gen_sidecar.empty() ? gen_out + ".json" : gen_sidecar;
      save_config(sidecar, sidecar_path);
      std::cout << "wrote " << gen_out << " (" << trace.sadi_count << " sadis, "
                << trace.slices.size() << " slices) and " << sidecar_path << '\n';
      return 0;
    }
    if (run->parsed()) {
      ExperimentConfig cfg = load_or_default(run_config);
      if (!run_dir.empty()) cfg.output_dir = run_dir;
      const auto rows = run_experiment(cfg);
      save_config(cfg, fs::path(cfg.output_dir) / "config.json");
      print_summary_table(rows);
      std::cout << "wrote " << rows.size() << " runs under " << cfg.output_dir << '\n';
      return 0;
    }
    if (ablate->parsed()) {
      ExperimentConfig cfg = load_or_default(ablate_config);
      if (!ablate_dir.empty()) cfg.output_dir = ablate_dir;
      const auto rows = eco_ablation(cfg);
      save_config(cfg, fs::path(cfg.output_dir) / "config.json");
      print_summary_table(rows);
      std::cout << "wrote ablation under " << cfg.output_dir << '\n';
      return 0;
    }
    if (rep->parsed()) {
      int window = report_window;
      if (window <= 0) {
        window = 50;
        const fs::path saved = fs::path(report_dir) / "config.json";
        if (fs::exists(saved)) window = load_config(saved).rolling_window;
      }
      return report(report_dir, window);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
