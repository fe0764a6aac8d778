#pragma once

#include <span>
#include <vector>

namespace dalab {

/// Periodic 1+1D box in natural units (hbar = c = 1).
struct LatticeSpec {
  int spatial_points = 64;  // N, even, >= 2
  double box_length = 10.0;  // L
  double mass = 1.0;         // m
  double time_step = 0.1;    // dt
  int time_points = 64;      // N_t
};

/// Throws ValidationError naming the first bad field.
void validate(const LatticeSpec& spec);

struct Mode {
  int index;         // n in k = 2 pi n / L
  double momentum;   // k
  double frequency;  // omega = sqrt(m^2 + k^2)
};

/// On-shell frequency sqrt(m^2 + k^2). Throws ValidationError for m <= 0.
double omega(double k, double mass);

/// Momentum grid and dispersion for a LatticeSpec. Immutable.
///
/// The grid is n = -(N/2 - 1) ... (N/2 - 1); the unpaired edge mode n = -N/2
/// is dropped so the set is closed under k -> -k. Modes are stored in
/// increasing n.
class Lattice {
 public:
  explicit Lattice(const LatticeSpec& spec);

  /// Negative-control lattice that keeps the edge mode n = -N/2. Kernels
  /// refuse to evaluate on it; see `negation_closed()`.
  static Lattice with_edge_mode(const LatticeSpec& spec);

  const LatticeSpec& spec() const noexcept { return spec_; }
  std::span<const Mode> modes() const noexcept { return modes_; }
  std::vector<double> momenta() const;
  std::vector<double> frequencies() const;

  double box_length() const noexcept { return spec_.box_length; }
  double mass() const noexcept { return spec_.mass; }
  double spatial_step() const noexcept { return spec_.box_length / spec_.spatial_points; }
  double time_step() const noexcept { return spec_.time_step; }

  bool negation_closed() const noexcept { return negation_closed_; }

  /// Position of mode index n in `modes()`, or -1 if absent.
  int position_of(int index) const noexcept;

 private:
  Lattice(const LatticeSpec& spec, bool keep_edge);

  LatticeSpec spec_;
  std::vector<Mode> modes_;
  bool negation_closed_ = true;
};

inline Lattice build_lattice(const LatticeSpec& spec) { return Lattice(spec); }

}  // namespace dalab
