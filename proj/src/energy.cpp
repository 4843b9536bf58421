#include "ranslice/energy.hpp"

#include <stdexcept>

namespace ranslice {

void PowerParams::validate() const {
  if (!(p_static_watts > 0.0) || !(p_fixed_watts > 0.0) || !(p_dynamic_watts > 0.0))
    throw std::invalid_argument("power parameters must be strictly positive");
}

double slice_energy(const SliceSpec& slice, double rho, const PowerParams& params) {
  params.validate();
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("load portion outside [0, 1]");
  return rho * slice.psi * params.p_dynamic_watts + slice.psi * params.p_fixed_watts;
}

double base_station_power(const Configuration& config, const std::vector<SliceSpec>& slices,
                          std::span<const double> rho, const PowerParams& params) {
  params.validate();
  if (config.active.size() != slices.size() || rho.size() != slices.size())
    throw std::invalid_argument("configuration/rho size mismatch");
  double total = params.p_static_watts;
  for (const SliceSpec& s : slices) {
    if (s.is_eco && !config.is_active(s.slice_id))
      throw std::invalid_argument("the eco slice cannot be deactivated");
    if (config.is_active(s.slice_id))
      total += slice_energy(s, rho[static_cast<std::size_t>(s.slice_id)], params);
  }
  return total;
}

}  // namespace ranslice
