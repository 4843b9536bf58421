#include "ranslice/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "csv.hpp"

namespace ranslice {
namespace {

constexpr const char* kHeader = "sadi,slice,user_id,delay_req_ms,load";

double curve_value(const SliceTrafficProfile& p, int tau, int sadis_per_day) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(tau % sadis_per_day) /
                   static_cast<double>(sadis_per_day);
  return p.mean_load * (1.0 + p.daily_amplitude * std::sin(t + p.phase) +
                        p.half_day_amplitude * std::sin(2.0 * t + 2.0 * p.phase));
}

std::vector<SliceSpec> profile_specs(const SyntheticProfile& profile) {
  std::vector<SliceSpec> specs;
  specs.reserve(profile.slices.size());
  for (const SliceTrafficProfile& s : profile.slices) specs.push_back(s.spec);
  return specs;
}

// Explicit floors win; an eco slice left at zero gets the configured fraction
// of the mean non-eco mean_load.
std::vector<double> resolve_background(const SyntheticProfile& profile) {
  double non_eco_mean = 0.0;
  int non_eco = 0;
  for (const SliceTrafficProfile& s : profile.slices)
    if (!s.spec.is_eco) {
      non_eco_mean += s.mean_load;
      ++non_eco;
    }
  if (non_eco > 0) non_eco_mean /= non_eco;
  std::vector<double> floors(profile.slices.size());
  for (std::size_t i = 0; i < profile.slices.size(); ++i) {
    floors[i] = profile.slices[i].background_load;
    if (profile.slices[i].spec.is_eco && floors[i] == 0.0)
      floors[i] = profile.eco_background_fraction * non_eco_mean;
  }
  return floors;
}

}  // namespace

SyntheticProfile SyntheticProfile::defaults() {
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  auto app = [](int id, const char* name, double psi, double delta_ms, double delay_min,
                double delay_max, double mean, double amp_day, double amp_half, double phase,
                double noise) {
    SliceTrafficProfile s;
    s.spec = {id, name, psi, delta_ms, false};
    s.mean_load = mean;
    s.daily_amplitude = amp_day;
    s.half_day_amplitude = amp_half;
    s.phase = phase;
    s.noise_std = noise;
    s.users_min = 11;
    s.users_max = 30;
    s.delay_min_ms = delay_min;
    s.delay_max_ms = delay_max;
    return s;
  };
  SyntheticProfile p;
  p.slices.push_back(app(0, "Facebook", 1.2, 10.0, 11.0, 20.0, 100.0, 0.45, 0.25, 0.0, 5.0));
  p.slices.push_back(app(1, "YouTube", 1.6, 1.0, 6.0, 17.0, 140.0, 0.50, 0.20, third, 7.0));
  p.slices.push_back(app(2, "Google", 1.4, 15.0, 16.0, 25.0, 80.0, 0.40, 0.30, 2.0 * third, 4.0));
  SliceTrafficProfile eco;
  eco.spec = {3, "EcoSlice", 1.0, 11.0, true};
  p.slices.push_back(eco);
  return p;
}

double TrafficTrace::total_load(int tau) const {
  if (tau < 0 || tau >= sadi_count) throw std::out_of_range("sadi index out of range");
  double total = 0.0;
  for (double l : loads[static_cast<std::size_t>(tau)]) total += l;
  return total;
}

void validate_profile(const SyntheticProfile& profile) {
  if (profile.sadi_count <= 0 || profile.sadis_per_day <= 0)
    throw std::invalid_argument("profile: sadi counts must be positive");
  if (profile.sadi_count % profile.sadis_per_day != 0)
    throw std::invalid_argument("profile: sadi_count must cover whole days");
  if (profile.eco_background_fraction < 0.0)
    throw std::invalid_argument("profile: eco_background_fraction must be >= 0");
  validate_slices(profile_specs(profile));
  for (const SliceTrafficProfile& s : profile.slices) {
    const std::string& name = s.spec.name;
    if (s.users_min < 0 || s.users_max < s.users_min)
      throw std::invalid_argument("profile: bad user-count range for '" + name + "'");
    if (s.users_max > 0 && (!(s.delay_min_ms > 0.0) || s.delay_max_ms < s.delay_min_ms))
      throw std::invalid_argument("profile: bad delay range for '" + name + "'");
    if (s.mean_load < 0.0 || s.noise_std < 0.0 || s.background_load < 0.0)
      throw std::invalid_argument("profile: negative load parameter for '" + name + "'");
  }
}

void validate_trace(const TrafficTrace& trace) {
  validate_slices(trace.slices);
  const std::size_t n = trace.slices.size();
  if (trace.sadi_count <= 0 || trace.sadis_per_day <= 0 ||
      trace.sadi_count % trace.sadis_per_day != 0)
    throw std::invalid_argument("trace: sadi_count must cover whole days");
  if (trace.background_load.size() != n ||
      trace.demands.size() != static_cast<std::size_t>(trace.sadi_count) ||
      trace.loads.size() != static_cast<std::size_t>(trace.sadi_count))
    throw std::invalid_argument("trace: inconsistent dimensions");
  for (double floor : trace.background_load)
    if (floor < 0.0) throw std::invalid_argument("trace: negative background load");
  for (int tau = 0; tau < trace.sadi_count; ++tau) {
    const auto t = static_cast<std::size_t>(tau);
    if (trace.demands[t].size() != n || trace.loads[t].size() != n)
      throw std::invalid_argument("trace: inconsistent dimensions at sadi " + std::to_string(tau));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (const UserDemand& user : trace.demands[t][i]) {
        if (user.slice_id != static_cast<int>(i))
          throw std::invalid_argument("trace: user filed under the wrong slice at sadi " +
                                      std::to_string(tau));
        if (!(user.delay_req_ms > 0.0))
          throw std::invalid_argument("trace: non-positive delay requirement at sadi " +
                                      std::to_string(tau));
        if (user.load < 0.0)
          throw std::invalid_argument("trace: negative user load at sadi " + std::to_string(tau));
      }
      if (trace.loads[t][i] < 0.0)
        throw std::invalid_argument("trace: negative slice load at sadi " + std::to_string(tau));
      total += trace.loads[t][i];
    }
    if (!(total > 0.0))
      throw std::invalid_argument("trace: zero offered load at sadi " + std::to_string(tau));
  }
}

TrafficTrace generate_synthetic(std::uint64_t seed, const SyntheticProfile& profile) {
  validate_profile(profile);
  const int n_slices = static_cast<int>(profile.slices.size());

  TrafficTrace trace;
  trace.sadi_count = profile.sadi_count;
  trace.sadis_per_day = profile.sadis_per_day;
  trace.slices = profile_specs(profile);
  trace.background_load = resolve_background(profile);
  trace.demands.assign(static_cast<std::size_t>(trace.sadi_count), {});
  trace.loads.assign(static_cast<std::size_t>(trace.sadi_count),
                     std::vector<double>(static_cast<std::size_t>(n_slices), 0.0));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  for (int tau = 0; tau < trace.sadi_count; ++tau) {
    const auto t = static_cast<std::size_t>(tau);
    trace.demands[t].resize(static_cast<std::size_t>(n_slices));
    for (int i = 0; i < n_slices; ++i) {
      const SliceTrafficProfile& p = profile.slices[static_cast<std::size_t>(i)];
      double total = 0.0;
      if (p.users_max > 0) {
        // Draw order is part of the format: count, then per-user (delay,
        // weight) pairs, then the noise on the SADI total.
        std::uniform_int_distribution<int> user_count(p.users_min, p.users_max);
        std::uniform_real_distribution<double> delay(p.delay_min_ms, p.delay_max_ms);
        const int n_users = user_count(rng);
        auto& users = trace.demands[t][static_cast<std::size_t>(i)];
        users.reserve(static_cast<std::size_t>(n_users));
        std::vector<double> weights(static_cast<std::size_t>(n_users));
        double weight_sum = 0.0;
        for (int u = 0; u < n_users; ++u) {
          users.push_back({i, delay(rng), 0.0});
          weights[static_cast<std::size_t>(u)] = weight(rng);
          weight_sum += weights[static_cast<std::size_t>(u)];
        }
        if (n_users > 0) {
          const double target =
              std::max(0.0, curve_value(p, tau, profile.sadis_per_day) + p.noise_std * noise(rng));
          for (int u = 0; u < n_users; ++u) {
            auto& user = users[static_cast<std::size_t>(u)];
            user.load = target * weights[static_cast<std::size_t>(u)] / weight_sum;
            total += user.load;
          }
        }
      }
      trace.loads[t][static_cast<std::size_t>(i)] =
          total + trace.background_load[static_cast<std::size_t>(i)];
    }
  }
  validate_trace(trace);
  return trace;
}

void export_csv(const TrafficTrace& trace, const std::filesystem::path& csv_path) {
  validate_trace(trace);
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot open '" + csv_path.string() + "' for writing");
  out << kHeader << '\n';
  for (int tau = 0; tau < trace.sadi_count; ++tau)
    for (std::size_t i = 0; i < trace.slices.size(); ++i) {
      const auto& users = trace.demands[static_cast<std::size_t>(tau)][i];
      for (std::size_t u = 0; u < users.size(); ++u)
        out << tau << ',' << trace.slices[i].name << ',' << u << ','
            << detail::format_double(users[u].delay_req_ms) << ','
            << detail::format_double(users[u].load) << '\n';
    }
  if (!out.flush()) throw std::runtime_error("write failed: " + csv_path.string());
}

TrafficTrace ingest_csv(const std::filesystem::path& csv_path, const SyntheticProfile& sidecar) {
  validate_profile(sidecar);
  std::ifstream in(csv_path);
  if (!in) throw std::invalid_argument("cannot open '" + csv_path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("line 1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw std::invalid_argument(std::string("line 1: expected header '") + kHeader + "'");

  std::map<std::string, int> slice_ids;
  for (const SliceTrafficProfile& s : sidecar.slices) slice_ids[s.spec.name] = s.spec.slice_id;
  const std::size_t n_slices = sidecar.slices.size();

  std::vector<std::vector<std::vector<UserDemand>>> demands;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = detail::split_fields(line);
    if (fields.size() != 5)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                                  std::to_string(fields.size()));
    const long sadi = detail::parse_long(fields[0], "sadi", line_no);
    if (sadi < 0)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": negative sadi");
    const auto it = slice_ids.find(fields[1]);
    if (it == slice_ids.end())
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown slice '" +
                                  fields[1] + "'");
    detail::parse_long(fields[2], "user_id", line_no);
    const double delay = detail::parse_double(fields[3], "delay_req_ms", line_no);
    if (!(delay > 0.0))
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": delay_req_ms must be positive");
    const double load = detail::parse_double(fields[4], "load", line_no);
    if (load < 0.0)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": negative load");
    if (demands.size() <= static_cast<std::size_t>(sadi))
      demands.resize(static_cast<std::size_t>(sadi) + 1,
                     std::vector<std::vector<UserDemand>>(n_slices));
    demands[static_cast<std::size_t>(sadi)][static_cast<std::size_t>(it->second)].push_back(
        {it->second, delay, load});
  }
  if (demands.empty()) throw std::invalid_argument("csv has no demand rows");
  for (std::size_t tau = 0; tau < demands.size(); ++tau) {
    bool any = false;
    for (const auto& users : demands[tau]) any = any || !users.empty();
    if (!any)
      throw std::invalid_argument("sadi " + std::to_string(tau) +
                                  " has no rows; sadi indices must be contiguous from 0");
  }

  TrafficTrace trace;
  trace.sadi_count = static_cast<int>(demands.size());
  trace.sadis_per_day = sidecar.sadis_per_day;
  if (trace.sadi_count % trace.sadis_per_day != 0)
    throw std::invalid_argument("csv covers " + std::to_string(trace.sadi_count) +
                                " sadis, not a whole number of " +
                                std::to_string(trace.sadis_per_day) + "-sadi days");
  trace.slices = profile_specs(sidecar);
  trace.background_load = resolve_background(sidecar);
  trace.demands = std::move(demands);
  trace.loads.assign(static_cast<std::size_t>(trace.sadi_count),
                     std::vector<double>(n_slices, 0.0));
  for (int tau = 0; tau < trace.sadi_count; ++tau)
    for (std::size_t i = 0; i < n_slices; ++i) {
      double total = 0.0;
      for (const UserDemand& user : trace.demands[static_cast<std::size_t>(tau)][i])
        total += user.load;
      trace.loads[static_cast<std::size_t>(tau)][i] = total + trace.background_load[i];
    }
  validate_trace(trace);
  return trace;
}

std::vector<double> load_portion(const TrafficTrace& trace, int tau) {
  const double total = trace.total_load(tau);
  if (!(total > 0.0)) throw std::domain_error("no offered load at sadi " + std::to_string(tau));
  std::vector<double> portions(trace.loads[static_cast<std::size_t>(tau)].size());
  for (std::size_t i = 0; i < portions.size(); ++i)
    portions[i] = trace.loads[static_cast<std::size_t>(tau)][i] / total;
  return portions;
}

}  // namespace ranslice
