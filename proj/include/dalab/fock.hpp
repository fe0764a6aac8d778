#pragma once

// Truncated Fock space over a discrete set of lattice modes, with particle (a)
// and antiparticle (b) ladder operators. Each mode carries its own occupation
// cap N_max; creation past the cap drops the component and counts a
// truncation event.
//
// Field expansion (box normalisation c_k = 1 / sqrt(2 w_k L)):
//   Psi(t,x)     = sum_k c_k [ a_k e^{i(kx - wt)} + b_k^dag e^{-i(kx - wt)} ]
//   Psi^dag(t,x) = sum_k c_k [ a_k^dag e^{-i(kx - wt)} + b_k e^{i(kx - wt)} ]

#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dalab/lattice.hpp"
#include "dalab/propagators.hpp"

namespace dalab::fock {

using complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<complex>;

enum class Sector : std::uint8_t { Particle, Antiparticle };

struct ModeSpec {
  std::vector<Mode> modes;
  double box_length = 0.0;
  int max_occupation = 1;

  std::size_t size() const noexcept { return modes.size(); }
  double normalization(std::size_t mode) const;
  /// Position of lattice mode index n, if present.
  std::optional<std::size_t> find(int index) const;
  bool negation_closed() const;
};

void validate(const ModeSpec& spec);
ModeSpec full_mode_spec(const Lattice& lattice, int max_occupation = 1);
/// Modes picked by lattice index n. Throws ValidationError on unknown or
/// repeated indices.
ModeSpec mode_subset(const Lattice& lattice, std::span<const int> indices,
                     int max_occupation = 1);

/// Occupations laid out as [n_a(0) .. n_a(M-1), n_b(0) .. n_b(M-1)].
using Occupation = std::vector<std::uint8_t>;

class FockState {
 public:
  explicit FockState(std::size_t mode_count = 0) : mode_count_(mode_count) {}

  static FockState vacuum(const ModeSpec& spec);

  std::size_t mode_count() const noexcept { return mode_count_; }
  const std::map<Occupation, complex>& amplitudes() const noexcept { return amplitudes_; }

  complex amplitude(const Occupation& occupation) const;
  complex vacuum_amplitude() const;
  double norm_squared() const;
  bool is_zero() const noexcept { return amplitudes_.empty(); }

  /// Adds to the amplitude of `occupation`; exact zeros are not stored.
  void add(const Occupation& occupation, complex amplitude);
  FockState& operator+=(const FockState& other);

 private:
  std::size_t mode_count_;
  std::map<Occupation, complex> amplitudes_;
};

FockState vacuum(const ModeSpec& spec);
complex inner_product(const FockState& bra, const FockState& ket);

struct Ladder {
  Sector sector;
  std::size_t mode;
  bool dagger;
};

/// coefficient * factors[0] * factors[1] * ... ; `frequency` is the rate v of
/// the term's time dependence e^{-ivt}, so d/dt multiplies by -iv.
struct OperatorTerm {
  complex coefficient{1.0, 0.0};
  double frequency = 0.0;
  std::vector<Ladder> factors;
};

class ModeOperator {
 public:
  ModeOperator() = default;

  static ModeOperator identity();
  static ModeOperator ladder(Sector sector, std::size_t mode, bool dagger,
                             complex coefficient = 1.0, double frequency = 0.0);

  const std::vector<OperatorTerm>& terms() const noexcept { return terms_; }

  ModeOperator adjoint() const;
  ModeOperator time_derivative() const;

  ModeOperator& operator+=(const ModeOperator& other);
  ModeOperator& operator*=(complex scalar);
  friend ModeOperator operator+(ModeOperator lhs, const ModeOperator& rhs) { return lhs += rhs; }
  friend ModeOperator operator-(ModeOperator lhs, const ModeOperator& rhs);
  friend ModeOperator operator*(const ModeOperator& lhs, const ModeOperator& rhs);
  friend ModeOperator operator*(complex scalar, ModeOperator op) { return op *= scalar; }

 private:
  std::vector<OperatorTerm> terms_;
};

inline ModeOperator a(std::size_t mode) { return ModeOperator::ladder(Sector::Particle, mode, false); }
inline ModeOperator a_dag(std::size_t mode) { return ModeOperator::ladder(Sector::Particle, mode, true); }
inline ModeOperator b(std::size_t mode) { return ModeOperator::ladder(Sector::Antiparticle, mode, false); }
inline ModeOperator b_dag(std::size_t mode) { return ModeOperator::ladder(Sector::Antiparticle, mode, true); }

struct Applied {
  FockState state;
  std::size_t truncation_events = 0;
};

/// Ladder action with sqrt(n) factors. Annihilating the empty mode gives the
/// zero component. Throws std::out_of_range for a mode outside `spec`.
Applied apply(const ModeOperator& op, const FockState& state, const ModeSpec& spec);

/// Enumerated basis of the truncated space, dimension (N_max + 1)^(2M).
class FockSpace {
 public:
  explicit FockSpace(ModeSpec spec);

  const ModeSpec& spec() const noexcept { return spec_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t index_of(const Occupation& occupation) const;
  Occupation occupation(std::size_t index) const;

 private:
  ModeSpec spec_;
  std::size_t dimension_ = 1;
};

SparseMatrix to_matrix(const ModeOperator& op, const FockSpace& space);
Eigen::VectorXcd to_vector(const FockState& state, const FockSpace& space);

/// Largest entry modulus; the norm used by every matrix residual below.
double max_abs_entry(const SparseMatrix& m);

// --- field-theory operators ---------------------------------------------

ModeOperator field(const ModeSpec& spec, double t, double x);
ModeOperator field_adjoint(const ModeSpec& spec, double t, double x);

/// Field written with retarded a-terms plus advanced coefficients
/// a_adv(k,t) = b^dag(-k) e^{+iwt}, before relabelling k -> -k. Needs a
/// negation-closed mode set (std::invalid_argument otherwise).
ModeOperator field_before_relabeling(const ModeSpec& spec, double t, double x);

/// Normal-ordered sum_k w_k (a^dag a + b^dag b).
ModeOperator hamiltonian(const ModeSpec& spec);
/// sum_k k (a^dag a + b^dag b).
ModeOperator total_momentum(const ModeSpec& spec);

struct OscillatorQuadratures {
  ModeOperator q;  // A + A^dag
  ModeOperator p;  // dq/dt
};

/// Quadratures of one oscillator from its time-dependent coefficient A(t).
OscillatorQuadratures quadratures(const ModeOperator& coefficient);

enum class Evolution { Retarded, Advanced };

/// a_k e^{-iwt} (retarded) or a_k e^{+iwt} (advanced).
ModeOperator oscillator_coefficient(const ModeSpec& spec, std::size_t mode, double t,
                                    Evolution evolution);

// --- checks ---------------------------------------------------------------

struct VacuumExpectation {
  complex value;
  std::size_t truncation_events = 0;
  bool particle_branch = true;  // x.t > y.t: <0|Psi(x) Psi^dag(y)|0>
};

/// <0| T Psi(x) Psi^dag(y) |0> by explicit operator application. Throws
/// std::domain_error when x.t == y.t.
VacuumExpectation time_ordered_vev(const ModeSpec& spec, const SpacetimePoint& x,
                                   const SpacetimePoint& y);

/// <0| {Psi(x), Psi^dag(y)} |0>.
complex anticommutator_vev(const ModeSpec& spec, const SpacetimePoint& x,
                           const SpacetimePoint& y);

/// <0| b_k |state>.
complex confirmation_inner(const ModeSpec& spec, std::size_t mode, const FockState& state);

/// || i d/dt B(t) + w B(t) || for B(t) = b_k^dag e^{+iwt}, derivative taken
/// from the phase annotation.
double negative_frequency_residual(const ModeSpec& spec, std::size_t mode, double t);

/// || dB/dt - i [H, B(t)] || with H the normal-ordered Hamiltonian.
double heisenberg_equation_residual(const ModeSpec& spec, std::size_t mode, double t);

struct AntiparticleEnergy {
  double expectation;     // <kbar| H |kbar>
  double eigen_residual;  // || H|kbar> - w |kbar> ||
};
AntiparticleEnergy antiparticle_energy(const ModeSpec& spec, std::size_t mode);

struct MomentumSignCheck {
  SparseMatrix p_ret;
  SparseMatrix p_adv;
  double residual;  // max |p_adv + p_ret|
};

/// Momenta of the same instantaneous coefficient a_k e^{-iwt} under retarded
/// (v = +w) and advanced (v = -w) evolution.
MomentumSignCheck momentum_sign_check(const ModeSpec& spec, std::size_t mode, double t);

/// max | field_before_relabeling - field | as matrices.
double reinterpretation_residual(const ModeSpec& spec, double t, double x);

/// max | [Psi, P] + i (Psi(x + dx) - Psi(x - dx)) / (2 dx) |.
double translation_generator_residual(const ModeSpec& spec, double t, double x, double dx);

/// Max deviation of all ladder commutators from the canonical values, on
/// basis states where every occupation is below N_max.
double canonical_commutator_residual(const ModeSpec& spec);

}  // namespace dalab::fock
