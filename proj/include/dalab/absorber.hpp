#pragma once

// Classical real currents on the N_t x N spacetime grid t_i = i dt,
// x_j = j L / N, coupled through the lattice kernels by discrete double sums.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dalab/lattice.hpp"
#include "dalab/propagators.hpp"

namespace dalab::absorber {

/// Inclusive index box.
struct IndexBox {
  int t_min, t_max, x_min, x_max;
};

class CurrentDistribution {
 public:
  CurrentDistribution(int time_points, int spatial_points);

  static CurrentDistribution zero(const Lattice& lattice);
  static CurrentDistribution point_source(const Lattice& lattice, int t_index, int x_index,
                                          double value = 1.0);
  /// Rejects samples with a nonzero imaginary part (ValidationError "current").
  static CurrentDistribution from_complex(int time_points, int spatial_points,
                                          std::span<const complex> samples);
  /// Rows `t_index,x_index,value`; a header line is optional. Unlisted
  /// samples are zero.
  static CurrentDistribution load_csv(const std::filesystem::path& path, int time_points,
                                      int spatial_points);

  int time_points() const noexcept { return time_points_; }
  int spatial_points() const noexcept { return spatial_points_; }

  double at(int t_index, int x_index) const;
  void set(int t_index, int x_index, double value);
  std::span<const double> samples() const noexcept { return samples_; }

  /// Bounding box of the nonzero samples; empty for the zero current.
  std::optional<IndexBox> support() const;

  CurrentDistribution& operator+=(const CurrentDistribution& other);
  CurrentDistribution& operator*=(double scale);

 private:
  void check_index(int t_index, int x_index) const;

  int time_points_;
  int spatial_points_;
  std::vector<double> samples_;  // row-major [t][x]
};

/// Uniform(-1, 1) samples on a random sub-box of the grid.
CurrentDistribution random_current(const Lattice& lattice, std::mt19937_64& rng);

/// Kernel values at every grid separation (dt index in [-(N_t-1), N_t-1],
/// periodic dx index in [0, N)). Equal times use step(0) = 1/2.
class KernelTable {
 public:
  KernelTable(const Lattice& lattice, KernelKind kind);

  KernelKind kind() const noexcept { return kind_; }
  complex operator()(int dt_index, int dx_index) const;

 private:
  KernelKind kind_;
  int time_points_;
  int spatial_points_;
  std::vector<complex> values_;
};

enum class Direction {
  Forward,   // K(x - y)
  Reversed,  // K(y - x)
};

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Every ordered pair (i, j) of n currents.
PairList all_pairs(std::size_t n);

/// Pairwise (cascade) summation.
complex pairwise_sum(std::span<const complex> values);
double pairwise_sum(std::span<const double> values);

/// sum_{x,y} a(x) K(x - y) b(y) (dt dx)^2.
complex interaction_sum(const CurrentDistribution& a, const CurrentDistribution& b,
                        KernelKind kind, const Lattice& lattice,
                        Direction direction = Direction::Forward);
complex interaction_sum(const CurrentDistribution& a, const CurrentDistribution& b,
                        const KernelTable& table, const Lattice& lattice,
                        Direction direction = Direction::Forward);

/// sum over `pairs` of interaction_sum(j_i, j_j, K).
complex double_sum(std::span<const CurrentDistribution> currents, const PairList& pairs,
                   const KernelTable& table, const Lattice& lattice,
                   Direction direction = Direction::Forward);

/// |S_1 - S_2| with S_1 the D1 double sum and S_2 the D+ double sum, over
/// `pairs` (all ordered pairs when omitted).
double free_field_identity(std::span<const CurrentDistribution> currents,
                           const Lattice& lattice,
                           const std::optional<PairList>& pairs = std::nullopt);

/// |D+ double sum with argument x - y  -  same with argument y - x|.
double dplus_direction_equivalence(std::span<const CurrentDistribution> currents,
                                   const Lattice& lattice,
                                   const std::optional<PairList>& pairs = std::nullopt);

struct ModeEnergy {
  int index;
  double momentum;
  double frequency;
  double energy;
};

struct EmissionSpectrum {
  std::vector<ModeEnergy> modes;
  double total = 0.0;
};

/// E_n = |J~_n|^2 (dt dx)^2 / (2 w_n L), J~_n = sum J(t,x) e^{-i(w_n t - k_n x)},
/// J the summed current. sum_n E_n equals i times the full D+ double sum.
EmissionSpectrum emitted_spectrum(std::span<const CurrentDistribution> currents,
                                  const Lattice& lattice);

/// Total emitted energy; light-tight iff it is below the caller's tolerance.
double light_tight_check(std::span<const CurrentDistribution> currents, const Lattice& lattice);

/// Removes every on-shell component cos / sin(w_n t - k_n x) from `current`
/// by least-squares projection onto their orthogonal complement.
CurrentDistribution project_light_tight(const CurrentDistribution& current,
                                        const Lattice& lattice);

}  // namespace dalab::absorber
