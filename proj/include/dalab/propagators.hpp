#pragma once

// Scalar-field kernels as exact mode sums on a periodic lattice.
//
// Convention ledger (docs/CONVENTIONS.md), with phi = w t - k x and the sum
// over the negation-closed momentum grid:
//
//   D+(t,x) = -(i/L) sum e^{-i phi} / (2w)      i D+ = <0|Psi(x) Psi^dag(0)|0>
//   D-(t,x) = +(i/L) sum e^{+i phi} / (2w)     -i D- = <0|Psi^dag(0) Psi(x)|0>
//   D   = D+ + D-              (commutator, real)
//   D1  = (D+ - D-) / 2        (Hadamard, imaginary)
//   Ret = step(t) D,  Adv = -step(-t) D,  Dbar = (Ret + Adv) / 2   (real)
//   DF  = step(t) D+ - step(-t) D-,       i DF = <0|T Psi(x) Psi^dag(0)|0>
//
// Under this ledger DF = Dbar + D1 and D+(x) = -D-(-x) hold identically.

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dalab/lattice.hpp"

namespace dalab {

using complex = std::complex<double>;

enum class KernelKind {
  WightmanPlus,
  WightmanMinus,
  Commutator,
  Hadamard,
  Retarded,
  Advanced,
  TimeSymmetric,
  Feynman,
};

inline constexpr KernelKind kAllKernelKinds[] = {
    KernelKind::WightmanPlus, KernelKind::WightmanMinus, KernelKind::Commutator,
    KernelKind::Hadamard,     KernelKind::Retarded,      KernelKind::Advanced,
    KernelKind::TimeSymmetric, KernelKind::Feynman,
};

std::string_view to_string(KernelKind kind);
std::optional<KernelKind> parse_kernel_kind(std::string_view name);

/// Kinds built from step functions; undefined at t = 0.
bool uses_step_function(KernelKind kind);

/// Point of the 1+1D box. x is stored reduced to [0, L).
class SpacetimePoint {
 public:
  SpacetimePoint(double t, double x, double box_length);

  double t() const noexcept { return t_; }
  double x() const noexcept { return x_; }
  double box_length() const noexcept { return box_length_; }

  /// this - other, with the spatial part reduced to [0, L).
  SpacetimePoint operator-(const SpacetimePoint& other) const;

 private:
  double t_;
  double x_;
  double box_length_;
};

/// Evaluates `kind` at p. Throws std::domain_error for step-function kinds at
/// t = 0 and std::invalid_argument on a lattice that is not negation-closed.
complex eval_kernel(const Lattice& lattice, KernelKind kind, const SpacetimePoint& p);
complex eval_kernel(const Lattice& lattice, KernelKind kind, double t, double x);

/// Same sums with step(0) = 1/2. Used where a lattice double sum must visit
/// equal times; on a negation-closed grid D(0,x) = 0, so only DF is affected
/// and it reduces to D1 there, keeping DF = Dbar + D1 at t = 0.
complex eval_kernel_midpoint(const Lattice& lattice, KernelKind kind, double t, double x);

namespace detail {
/// No closure or t = 0 checks; plain (unpaired) sums when the grid is not
/// closed. Only for negative controls.
complex eval_kernel_unchecked(const Lattice& lattice, KernelKind kind, double t, double x);
}  // namespace detail

/// max |DF - Dbar - (D+ - D-)/2| over the points (all need t != 0).
double feynman_decomposition_residual(const Lattice& lattice,
                                      std::span<const SpacetimePoint> points);

/// max |D+(x - y) + D-(y - x)| over the pairs.
double wightman_antisymmetry_residual(
    const Lattice& lattice,
    std::span<const std::pair<SpacetimePoint, SpacetimePoint>> pairs);

struct KernelSample {
  KernelKind kind;
  double t;
  double x;
  complex value;
};

std::vector<KernelSample> sample_kernel(const Lattice& lattice, KernelKind kind,
                                        std::span<const double> times, double x);

// --- single-mode frequency integral -------------------------------------

struct FrequencyIntegralSpec {
  double mode_frequency;   // w
  double time;             // t
  double epsilon;          // regulator, > 0
  double frequency_cutoff; // Omega, > 10 w
};

void validate(const FrequencyIntegralSpec& spec);

/// (1/2pi) int dv e^{-ivt} i / (v^2 - w^2 + i eps).
///
/// Adaptive quadrature on [-Omega, Omega] with the poles as breakpoints, plus
/// the |v| > Omega tail in closed form (sine/cosine integrals). Tends to
/// e^{-iw|t|} / (2w) as eps -> 0. Throws ConvergenceError if the quadrature
/// misses `abs_tolerance`.
complex feynman_frequency_integral(const FrequencyIntegralSpec& spec,
                                   double abs_tolerance = 1e-10);

struct FrequencySplit {
  complex pp_part;     // principal part
  complex delta_part;  // on-shell delta term
  double residual;     // |pp + delta - full integral|
};

/// Splits the integral into principal part and delta term. The principal part
/// excludes symmetric windows of half-width `window` around v = +-w and removes
/// the leading O(window) error by one Richardson step (window, window / 2).
/// The delta term is evaluated analytically: delta(v^2 - w^2) puts weight
/// 1/(2w) at each of v = +-w, giving cos(wt) / (2w).
FrequencySplit feynman_frequency_split(const FrequencyIntegralSpec& spec,
                                       double window = 1e-3,
                                       double abs_tolerance = 1e-10);

}  // namespace dalab
