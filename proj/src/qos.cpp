#include "ranslice/qos.hpp"

#include <stdexcept>

namespace ranslice {

int user_satisfaction(double served_delta_ms, double delay_req_ms) {
  if (!(served_delta_ms > 0.0) || !(delay_req_ms > 0.0))
    throw std::domain_error("delays must be positive");
  return served_delta_ms <= delay_req_ms ? 1 : 0;
}

QosReport evaluate_qos(const TrafficTrace& trace, int tau, const Configuration& config,
                       bool eco_fallback) {
  if (tau < 0 || tau >= trace.sadi_count) throw std::out_of_range("sadi index out of range");
  if (config.active.size() != trace.slices.size())
    throw std::invalid_argument("configuration size mismatch");
  const int eco = eco_index(trace.slices);
  if (!config.is_active(eco)) throw std::invalid_argument("the eco slice cannot be deactivated");

  QosReport report;
  report.per_user.resize(trace.slices.size());
  report.per_slice.resize(trace.slices.size());
  double engaged_sum = 0.0;
  int engaged = 0;
  for (std::size_t i = 0; i < trace.slices.size(); ++i) {
    const auto& users = trace.demands[static_cast<std::size_t>(tau)][i];
    report.per_user[i].reserve(users.size());
    int satisfied = 0;
    for (const UserDemand& user : users) {
      int bit = 0;
      if (config.is_active(static_cast<int>(i)))
        bit = user_satisfaction(trace.slices[i].delta_ms, user.delay_req_ms);
      else if (eco_fallback)
        bit = user_satisfaction(trace.slices[static_cast<std::size_t>(eco)].delta_ms,
                                user.delay_req_ms);
      report.per_user[i].push_back(bit);
      satisfied += bit;
    }
    if (!users.empty()) {
      report.per_slice[i] = static_cast<double>(satisfied) / static_cast<double>(users.size());
      engaged_sum += *report.per_slice[i];
      ++engaged;
    }
  }
  // A station with no demand at all counts as fully satisfied.
  report.station = engaged > 0 ? engaged_sum / engaged : 1.0;
  return report;
}

}  // namespace ranslice
