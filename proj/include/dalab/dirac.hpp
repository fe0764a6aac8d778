#pragma once

// First-quantised Dirac spinors in the standard representation, metric
// (+,-,-,-).
//
//   gamma^0 = diag(1, 1, -1, -1),   gamma^i = [[0, sigma^i], [-sigma^i, 0]]

#include <Eigen/Dense>
#include <array>

namespace dalab::dirac {

using Matrix4 = Eigen::Matrix4cd;
using Spinor = Eigen::Vector4cd;
using Vector3 = std::array<double, 3>;
using FourVector = std::array<double, 4>;

struct DiracMatrixSet {
  std::array<Matrix4, 4> gamma;
  FourVector metric{1.0, -1.0, -1.0, -1.0};
};

DiracMatrixSet gamma_matrices();

/// max over mu, nu and entries of |{g^mu, g^nu} - 2 g^{mu nu} 1|.
double clifford_residual(const DiracMatrixSet& set);

struct DiracSpinorSolution {
  Spinor spinor;
  Vector3 momentum{};
  double mass = 0.0;
  double energy = 0.0;  // signed
  int index = 0;        // 1, 2: E > 0; 3, 4: E < 0
};

/// psi_1..psi_4: the standard basis vectors with E = +m, +m, -m, -m.
std::array<DiracSpinorSolution, 4> rest_frame_solutions(double mass);

/// Solves (gamma^mu p_mu - m) u = 0 with E = energy_sign * sqrt(m^2 + p^2),
/// normalised to u^dag u = 1. Spin 1, 2 picks the upper (E > 0) or lower
/// (E < 0) two-spinor basis vector, so p = 0 gives psi_{spin} or
/// psi_{2 + spin}. Throws std::runtime_error if the null space is not
/// two-dimensional.
DiracSpinorSolution plane_wave_solution(const Vector3& p, double mass, int energy_sign,
                                        int spin);

/// Dirac operator gamma^mu p_mu - m at p^0 = E.
Matrix4 dirac_operator(const Vector3& p, double energy, double mass);

/// max_i |((gamma^mu p_mu - m) u)_i|.
double dirac_residual(const DiracSpinorSolution& sol);

/// j^mu = u^dag gamma^0 gamma^mu u. Throws std::logic_error if any component
/// has an imaginary part above 1e-14.
FourVector probability_current(const DiracSpinorSolution& sol);

}  // namespace dalab::dirac
