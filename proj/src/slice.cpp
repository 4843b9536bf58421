#include "ranslice/slice.hpp"

#include <set>
#include <stdexcept>

namespace ranslice {

bool Configuration::is_active(int slice_id) const {
  return active.at(static_cast<std::size_t>(slice_id)) != 0;
}

int Configuration::count_active() const {
  int n = 0;
  for (std::uint8_t a : active) n += a != 0;
  return n;
}

void validate_slices(const std::vector<SliceSpec>& slices) {
  if (slices.empty()) throw std::invalid_argument("slices: empty");
  int eco_count = 0;
  double eco_psi = 0.0;
  std::set<std::string> names;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const SliceSpec& s = slices[i];
    if (s.slice_id != static_cast<int>(i))
      throw std::invalid_argument("slices: ids must run 0..n-1 in order");
    if (s.name.empty() || s.name.find(',') != std::string::npos ||
        s.name.find('\n') != std::string::npos)
      throw std::invalid_argument("slices: name empty or not CSV-safe: '" + s.name + "'");
    if (!names.insert(s.name).second)
      throw std::invalid_argument("slices: duplicate name '" + s.name + "'");
    if (!(s.psi > 0.0))
      throw std::invalid_argument("slices: psi must be positive ('" + s.name + "')");
    if (!(s.delta_ms > 0.0))
      throw std::invalid_argument("slices: delta_ms must be positive ('" + s.name + "')");
    if (s.is_eco) {
      ++eco_count;
      eco_psi = s.psi;
    }
  }
  if (eco_count != 1) throw std::invalid_argument("slices: exactly one eco slice required");
  for (const SliceSpec& s : slices)
    if (!s.is_eco && s.psi < eco_psi)
      throw std::invalid_argument("slices: the eco slice must have the lowest psi");
}

int eco_index(const std::vector<SliceSpec>& slices) {
  for (const SliceSpec& s : slices)
    if (s.is_eco) return s.slice_id;
  throw std::invalid_argument("slices: no eco slice");
}

}  // namespace ranslice
