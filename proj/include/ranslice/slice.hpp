#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ranslice {

// One network slice as the base station sees it: psi is the relative
// resource-consumption factor, delta_ms the delay the slice delivers to
// every user it serves. Exactly one slice is the always-on eco slice.
struct SliceSpec {
  int slice_id = 0;
  std::string name;
  double psi = 1.0;
  double delta_ms = 1.0;
  bool is_eco = false;

  bool operator==(const SliceSpec&) const = default;
};

// A single user's demand inside one SADI.
struct UserDemand {
  int slice_id = 0;
  double delay_req_ms = 0.0;
  double load = 0.0;

  bool operator==(const UserDemand&) const = default;
};

// Activation state of every slice for one SADI.
struct Configuration {
  std::vector<std::uint8_t> active;

  bool is_active(int slice_id) const;
  int count_active() const;

  bool operator==(const Configuration&) const = default;
};

// Throws std::invalid_argument unless ids run 0..n-1 in order, names are
// non-empty, unique and CSV-safe, psi and delta_ms are positive, and exactly
// one slice is eco with psi no larger than any other slice's.
void validate_slices(const std::vector<SliceSpec>& slices);

// Index of the unique eco slice; validate_slices must hold.
int eco_index(const std::vector<SliceSpec>& slices);

}  // namespace ranslice
