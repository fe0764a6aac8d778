#include "dalab/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dalab/errors.hpp"

namespace dalab {

void validate(const LatticeSpec& spec) {
  if (spec.spatial_points < 2 || spec.spatial_points % 2 != 0)
    throw ValidationError("n_space", "must be an even integer >= 2, got " +
                                         std::to_string(spec.spatial_points));
  if (!(spec.box_length > 0.0) || !std::isfinite(spec.box_length))
    throw ValidationError("box_length", "must be positive and finite");
  if (!(spec.mass > 0.0) || !std::isfinite(spec.mass))
    throw ValidationError("mass", "must be positive (massless fields are not supported)");
  if (!(spec.time_step > 0.0) || !std::isfinite(spec.time_step))
    throw ValidationError("dt", "must be positive and finite");
  if (spec.time_points < 1)
    throw ValidationError("n_time", "must be a positive integer");
}

double omega(double k, double mass) {
  if (!(mass > 0.0)) throw ValidationError("mass", "must be positive");
  return std::hypot(mass, k);
}

Lattice::Lattice(const LatticeSpec& spec) : Lattice(spec, false) {}

Lattice Lattice::with_edge_mode(const LatticeSpec& spec) { return Lattice(spec, true); }

Lattice::Lattice(const LatticeSpec& spec, bool keep_edge) : spec_(spec) {
  validate(spec_);
  const int half = spec_.spatial_points / 2;
  const int lowest = keep_edge ? -half : -(half - 1);
  const double dk = 2.0 * std::numbers::pi / spec_.box_length;
  modes_.reserve(static_cast<std::size_t>(half - lowest));
  for (int n = lowest; n <= half - 1; ++n) {
    // n * dk rather than accumulating, so k(-n) == -k(n) bit for bit.
    const double k = static_cast<double>(n) * dk;
    modes_.push_back({n, k, omega(k, spec_.mass)});
  }
  negation_closed_ = true;
  for (const auto& m : modes_)
    if (position_of(-m.index) < 0) negation_closed_ = false;
}

int Lattice::position_of(int index) const noexcept {
  if (modes_.empty()) return -1;
  const int pos = index - modes_.front().index;
  if (pos < 0 || pos >= static_cast<int>(modes_.size())) return -1;
  return pos;
}

std::vector<double> Lattice::momenta() const {
  std::vector<double> out;
  out.reserve(modes_.size());
  for (const auto& m : modes_) out.push_back(m.momentum);
  return out;
}

std::vector<double> Lattice::frequencies() const {
  std::vector<double> out;
  out.reserve(modes_.size());
  for (const auto& m : modes_) out.push_back(m.frequency);
  return out;
}

}  // namespace dalab
