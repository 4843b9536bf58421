#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ranslice/slice.hpp"

namespace ranslice {

// Generation recipe for one slice: a diurnal mean-load curve built from a
// daily sinusoid plus a half-day harmonic (two peaks), shifted by `phase`,
// with additive Gaussian noise on the per-SADI total. Users are drawn
// uniformly from [users_min, users_max] with continuous-uniform delay
// requirements. `background_load` is a constant floor the slice carries even
// when it has no users (used by the eco slice so the station load never
// vanishes).
struct SliceTrafficProfile {
  SliceSpec spec;
  double mean_load = 0.0;
  double daily_amplitude = 0.0;
  double half_day_amplitude = 0.0;
  double phase = 0.0;
  double noise_std = 0.0;
  int users_min = 0;
  int users_max = 0;
  double delay_min_ms = 1.0;
  double delay_max_ms = 1.0;
  double background_load = 0.0;

  bool operator==(const SliceTrafficProfile&) const = default;
};

struct SyntheticProfile {
  int sadi_count = 1440;
  int sadis_per_day = 144;
  // The eco floor defaults to this fraction of the mean non-eco mean_load
  // when the eco slice's own background_load is left at zero.
  double eco_background_fraction = 0.05;
  std::vector<SliceTrafficProfile> slices;

  // Three app slices (Facebook/YouTube/Google) plus the eco slice with the
  // stock psi/delta/demand ranges.
  static SyntheticProfile defaults();

  bool operator==(const SyntheticProfile&) const = default;
};

struct TrafficTrace {
  int sadi_count = 0;
  int sadis_per_day = 0;
  std::vector<SliceSpec> slices;
  std::vector<double> background_load;                        // per slice
  std::vector<std::vector<std::vector<UserDemand>>> demands;  // [sadi][slice]
  std::vector<std::vector<double>> loads;                     // [sadi][slice]

  double total_load(int tau) const;

  bool operator==(const TrafficTrace&) const = default;
};

void validate_profile(const SyntheticProfile& profile);
void validate_trace(const TrafficTrace& trace);

// Deterministic: the same (seed, profile) yields the same trace, bit for bit.
TrafficTrace generate_synthetic(std::uint64_t seed, const SyntheticProfile& profile);

// Reads `sadi,slice,user_id,delay_req_ms,load` rows. Slice labels must match
// the sidecar profile's names; loads are recomputed from the rows plus each
// slice's background floor. Malformed input throws std::invalid_argument
// naming the offending line.
TrafficTrace ingest_csv(const std::filesystem::path& csv_path, const SyntheticProfile& sidecar);

void export_csv(const TrafficTrace& trace, const std::filesystem::path& csv_path);

// Offered-load portions for one SADI; nonnegative, sums to 1.
std::vector<double> load_portion(const TrafficTrace& trace, int tau);

}  // namespace ranslice
