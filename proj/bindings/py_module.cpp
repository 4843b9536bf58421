#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "ranslice/agents.hpp"
#include "ranslice/config.hpp"
#include "ranslice/energy.hpp"
#include "ranslice/env.hpp"
#include "ranslice/harness.hpp"
#include "ranslice/mlp.hpp"
#include "ranslice/qos.hpp"
#include "ranslice/slice.hpp"
#include "ranslice/traffic.hpp"

namespace py = pybind11;
using namespace ranslice;

PYBIND11_MODULE(_ranslice, m) {
  m.doc() = "Energy-aware slice activation simulator with bandit agents";

  py::class_<SliceSpec>(m, "SliceSpec")
      .def(py::init<>())
      .def_readwrite("slice_id", &SliceSpec::slice_id)
      .def_readwrite("name", &SliceSpec::name)
      .def_readwrite("psi", &SliceSpec::psi)
      .def_readwrite("delta_ms", &SliceSpec::delta_ms)
      .def_readwrite("is_eco", &SliceSpec::is_eco);

  py::class_<UserDemand>(m, "UserDemand")
      .def(py::init<>())
      .def_readwrite("slice_id", &UserDemand::slice_id)
      .def_readwrite("delay_req_ms", &UserDemand::delay_req_ms)
      .def_readwrite("load", &UserDemand::load);

  py::class_<Configuration>(m, "Configuration")
      .def(py::init<>())
      .def_readwrite("active", &Configuration::active)
      .def("is_active", &Configuration::is_active)
      .def("count_active", &Configuration::count_active);

  m.def("validate_slices", &validate_slices);
  m.def("eco_index", &eco_index);

  py::class_<PowerParams>(m, "PowerParams")
      .def(py::init<>())
      .def_readwrite("p_static_watts", &PowerParams::p_static_watts)
      .def_readwrite("p_fixed_watts", &PowerParams::p_fixed_watts)
      .def_readwrite("p_dynamic_watts", &PowerParams::p_dynamic_watts)
      .def("validate", &PowerParams::validate);

  m.def("slice_energy", &slice_energy);
  m.def(
      "base_station_power",
      [](const Configuration& config, const std::vector<SliceSpec>& slices,
         const std::vector<double>& rho, const PowerParams& params) {
        return base_station_power(config, slices, rho, params);
      },
      py::arg("config"), py::arg("slices"), py::arg("rho"), py::arg("params") = PowerParams{});

  py::class_<SliceTrafficProfile>(m, "SliceTrafficProfile")
      .def(py::init<>())
      .def_readwrite("spec", &SliceTrafficProfile::spec)
      .def_readwrite("mean_load", &SliceTrafficProfile::mean_load)
      .def_readwrite("daily_amplitude", &SliceTrafficProfile::daily_amplitude)
      .def_readwrite("half_day_amplitude", &SliceTrafficProfile::half_day_amplitude)
      .def_readwrite("phase", &SliceTrafficProfile::phase)
      .def_readwrite("noise_std", &SliceTrafficProfile::noise_std)
      .def_readwrite("users_min", &SliceTrafficProfile::users_min)
      .def_readwrite("users_max", &SliceTrafficProfile::users_max)
      .def_readwrite("delay_min_ms", &SliceTrafficProfile::delay_min_ms)
      .def_readwrite("delay_max_ms", &SliceTrafficProfile::delay_max_ms)
      .def_readwrite("background_load", &SliceTrafficProfile::background_load);

  py::class_<SyntheticProfile>(m, "SyntheticProfile")
      .def(py::init<>())
      .def_static("defaults", &SyntheticProfile::defaults)
      .def_readwrite("sadi_count", &SyntheticProfile::sadi_count)
      .def_readwrite("sadis_per_day", &SyntheticProfile::sadis_per_day)
      .def_readwrite("eco_background_fraction", &SyntheticProfile::eco_background_fraction)
      .def_readwrite("slices", &SyntheticProfile::slices);

  py::class_<TrafficTrace>(m, "TrafficTrace")
      .def(py::init<>())
      .def_readwrite("sadi_count", &TrafficTrace::sadi_count)
      .def_readwrite("sadis_per_day", &TrafficTrace::sadis_per_day)
      .def_readwrite("slices", &TrafficTrace::slices)
      .def_readwrite("background_load", &TrafficTrace::background_load)
      .def_readwrite("demands", &TrafficTrace::demands)
      .def_readwrite("loads", &TrafficTrace::loads)
      .def("total_load", &TrafficTrace::total_load);

  m.def("validate_profile", &validate_profile);
  m.def("validate_trace", &validate_trace);
  m.def("generate_synthetic", &generate_synthetic);
  m.def("ingest_csv", &ingest_csv);
  m.def("export_csv", &export_csv);
  m.def("load_portion", &load_portion);

  py::class_<QosReport>(m, "QosReport")
      .def(py::init<>())
      .def_readwrite("per_user", &QosReport::per_user)
      .def_readwrite("per_slice", &QosReport::per_slice)
      .def_readwrite("station", &QosReport::station);

  m.def("user_satisfaction", &user_satisfaction);
  m.def("evaluate_qos", &evaluate_qos, py::arg("trace"), py::arg("tau"), py::arg("config"),
        py::arg("eco_fallback") = true);

  py::class_<EnvConfig>(m, "EnvConfig")
      .def(py::init<>())
      .def_readwrite("beta", &EnvConfig::beta)
      .def_readwrite("power", &EnvConfig::power)
      .def_readwrite("reward_energy_scale", &EnvConfig::reward_energy_scale)
      .def_readwrite("offload_to_eco", &EnvConfig::offload_to_eco)
      .def_readwrite("eco_fallback", &EnvConfig::eco_fallback);

  py::class_<Observation>(m, "Observation")
      .def(py::init<>())
      .def_readwrite("sadi_of_day", &Observation::sadi_of_day)
      .def_readwrite("prev_power_watts", &Observation::prev_power_watts)
      .def_readwrite("prev_qos", &Observation::prev_qos);

  py::class_<StepOutcome>(m, "StepOutcome")
      .def(py::init<>())
      .def_readonly("tau", &StepOutcome::tau)
      .def_readonly("action_index", &StepOutcome::action_index)
      .def_readonly("action", &StepOutcome::action)
      .def_readonly("power_watts", &StepOutcome::power_watts)
      .def_readonly("qos", &StepOutcome::qos)
      .def_readonly("reward", &StepOutcome::reward)
      .def_readonly("best_reward", &StepOutcome::best_reward)
      .def_readonly("regret_step", &StepOutcome::regret_step)
      .def_readonly("all_rewards", &StepOutcome::all_rewards);

  m.def("action_space", &action_space);
  m.def("carried_load_portion", &carried_load_portion);
  m.def("step", &step);
  m.def("cumulative_regret", [](const std::vector<StepOutcome>& outcomes) {
    return cumulative_regret(outcomes);
  });

  py::class_<MlpModel>(m, "MlpModel")
      .def(py::init<std::vector<int>, std::uint64_t>(), py::arg("layer_dims"), py::arg("seed"))
      .def("forward",
           [](const MlpModel& model, const std::vector<double>& input) {
             return model.forward(input);
           })
      .def("train_step",
           [](MlpModel& model, const std::vector<double>& input, int output_index, double target,
              double learning_rate) {
             return model.train_step(input, output_index, target, learning_rate);
           })
      .def("layer_dims", &MlpModel::layer_dims)
      .def("input_dim", &MlpModel::input_dim)
      .def("output_dim", &MlpModel::output_dim)
      .def("parameters", &MlpModel::parameters)
      .def("set_parameters",
           [](MlpModel& model, const std::vector<double>& flat) { model.set_parameters(flat); })
      .def("save", &MlpModel::save)
      .def_static("load", &MlpModel::load);

  py::class_<AgentContext>(m, "AgentContext")
      .def(py::init<>())
      .def_readwrite("num_actions", &AgentContext::num_actions)
      .def_readwrite("sadis_per_day", &AgentContext::sadis_per_day)
      .def_readwrite("train_steps", &AgentContext::train_steps);

  py::class_<AgentParams>(m, "AgentParams")
      .def(py::init<>())
      .def_readwrite("epsilon", &AgentParams::epsilon)
      .def_readwrite("epsilon_decay", &AgentParams::epsilon_decay)
      .def_readwrite("alpha", &AgentParams::alpha)
      .def_readwrite("m", &AgentParams::m)
      .def_readwrite("phi", &AgentParams::phi)
      .def_readwrite("literal_update", &AgentParams::literal_update);

  py::class_<Agent>(m, "Agent")
      .def("name", &Agent::name)
      .def("select", &Agent::select)
      .def("update", &Agent::update)
      .def("freeze", &Agent::freeze);

  m.def("agent_keys", &agent_keys);
  m.def("make_agent", &make_agent, py::arg("key"), py::arg("ctx"),
        py::arg("params") = AgentParams{}, py::arg("seed") = 0);

  py::class_<TraceConfig>(m, "TraceConfig")
      .def(py::init<>())
      .def_readwrite("source", &TraceConfig::source)
      .def_readwrite("csv_path", &TraceConfig::csv_path)
      .def_readwrite("seed", &TraceConfig::seed)
      .def_readwrite("profile", &TraceConfig::profile);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("trace", &ExperimentConfig::trace)
      .def_readwrite("power", &ExperimentConfig::power)
      .def_readwrite("reward_energy_scale", &ExperimentConfig::reward_energy_scale)
      .def_readwrite("offload_to_eco", &ExperimentConfig::offload_to_eco)
      .def_readwrite("eco_fallback", &ExperimentConfig::eco_fallback)
      .def_readwrite("agents", &ExperimentConfig::agents)
      .def_readwrite("betas", &ExperimentConfig::betas)
      .def_readwrite("seeds", &ExperimentConfig::seeds)
      .def_readwrite("train_steps", &ExperimentConfig::train_steps)
      .def_readwrite("sadi_minutes", &ExperimentConfig::sadi_minutes)
      .def_readwrite("rolling_window", &ExperimentConfig::rolling_window)
      .def_readwrite("agent_params", &ExperimentConfig::agent_params)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir);

  m.def("default_config", &default_config);
  m.def("load_config", &load_config);
  m.def("save_config", &save_config);
  m.def("make_trace", &make_trace);

  py::class_<RunSummary>(m, "RunSummary")
      .def(py::init<>())
      .def_readwrite("agent", &RunSummary::agent)
      .def_readwrite("beta", &RunSummary::beta)
      .def_readwrite("seed", &RunSummary::seed)
      .def_readwrite("mean_power_watts", &RunSummary::mean_power_watts)
      .def_readwrite("total_energy_wh", &RunSummary::total_energy_wh)
      .def_readwrite("mean_qos", &RunSummary::mean_qos)
      .def_readwrite("cumulative_reward", &RunSummary::cumulative_reward)
      .def_readwrite("cumulative_regret", &RunSummary::cumulative_regret)
      .def_readwrite("energy_gain_vs_allactive", &RunSummary::energy_gain_vs_allactive)
      .def_readwrite("wall_time_select_s", &RunSummary::wall_time_select_s)
      .def_readwrite("wall_time_update_s", &RunSummary::wall_time_update_s);

  py::class_<CellResult>(m, "CellResult")
      .def(py::init<>())
      .def_readwrite("summary", &CellResult::summary)
      .def_readwrite("eval_steps", &CellResult::eval_steps)
      .def_readwrite("train_losses", &CellResult::train_losses);

  m.def("rolling_mean", [](const std::vector<double>& series, int window) {
    return rolling_mean(series, window);
  });
  m.def("run_cell", &run_cell, py::arg("trace"), py::arg("agent"), py::arg("env"),
        py::arg("train_steps"), py::arg("sadi_minutes") = 10.0);
  m.def("run_grid_cell", &run_grid_cell);
  m.def("run_experiment", &run_experiment);
  m.def("eco_ablation", &eco_ablation);
  m.def("mix_agent_seed", &mix_agent_seed);
}
