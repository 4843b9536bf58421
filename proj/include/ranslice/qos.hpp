#pragma once

#include <optional>
#include <vector>

#include "ranslice/slice.hpp"
#include "ranslice/traffic.hpp"

namespace ranslice {

struct QosReport {
  // Satisfaction bit per user, same layout as trace.demands[tau].
  std::vector<std::vector<int>> per_user;
  // Mean satisfaction per slice; nullopt for slices serving no users this SADI.
  std::vector<std::optional<double>> per_slice;
  // Mean over slices with at least one user; 1.0 when no slice has users.
  double station = 1.0;
};

// 1 when the served delay meets the user's requirement (equality satisfies).
// Both arguments must be positive.
int user_satisfaction(double served_delta_ms, double delay_req_ms);

// Per-user satisfaction for one SADI under the given activation state.
// Users of deactivated slices are served at the eco slice's delay when
// eco_fallback is set and are unsatisfied otherwise; either way they stay
// attributed to the slice they requested.
QosReport evaluate_qos(const TrafficTrace& trace, int tau, const Configuration& config,
                       bool eco_fallback = true);

}  // namespace ranslice
