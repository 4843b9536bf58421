#pragma once

#include <span>
#include <vector>

#include "ranslice/slice.hpp"

namespace ranslice {

struct PowerParams {
  double p_static_watts = 18.0;
  double p_fixed_watts = 139.0;
  double p_dynamic_watts = 742.0;

  void validate() const;  // all strictly positive

  bool operator==(const PowerParams&) const = default;
};

// Power drawn by one active slice carrying load portion rho in [0, 1]:
// rho * psi * P_dynamic + psi * P_fixed. Throws std::domain_error when rho
// falls outside [0, 1].
double slice_energy(const SliceSpec& slice, double rho, const PowerParams& params);

// Station total: slice_energy summed over active slices plus P_static.
// The eco slice must be active; rho must match the slice count.
double base_station_power(const Configuration& config, const std::vector<SliceSpec>& slices,
                          std::span<const double> rho, const PowerParams& params);

}  // namespace ranslice
