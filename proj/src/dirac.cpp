#include "dalab/dirac.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dalab/errors.hpp"

namespace dalab::dirac {

namespace {

using complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

constexpr double kNullTolerance = 1e-10;

std::array<Matrix2, 3> pauli() {
  const complex i{0.0, 1.0};
  Matrix2 s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  return {s1, s2, s3};
}

Matrix2 sigma_dot(const Vector3& p) {
  const auto s = pauli();
  return p[0] * s[0] + p[1] * s[1] + p[2] * s[2];
}

void require_mass(double mass) {
  if (!(mass > 0.0)) throw ValidationError("mass", "must be positive");
}

}  // namespace

DiracMatrixSet gamma_matrices() {
  DiracMatrixSet set;
  set.gamma[0] = Matrix4::Zero();
  set.gamma[0].diagonal() << 1, 1, -1, -1;
  const auto s = pauli();
  for (int i = 0; i < 3; ++i) {
    Matrix4 g = Matrix4::Zero();
    g.topRightCorner<2, 2>() = s[static_cast<std::size_t>(i)];
    g.bottomLeftCorner<2, 2>() = -s[static_cast<std::size_t>(i)];
    set.gamma[static_cast<std::size_t>(i) + 1] = g;
  }
  return set;
}

double clifford_residual(const DiracMatrixSet& set) {
  double worst = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = 0; nu < 4; ++nu) {
      Matrix4 ac = set.gamma[mu] * set.gamma[nu] + set.gamma[nu] * set.gamma[mu];
      if (mu == nu) ac -= 2.0 * set.metric[mu] * Matrix4::Identity();
      worst = std::max(worst, ac.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

std::array<DiracSpinorSolution, 4> rest_frame_solutions(double mass) {
  require_mass(mass);
  std::array<DiracSpinorSolution, 4> out;
  for (int i = 0; i < 4; ++i) {
    auto& sol = out[static_cast<std::size_t>(i)];
    sol.spinor = Spinor::Unit(i);
    sol.mass = mass;
    sol.energy = i < 2 ? mass : -mass;
    sol.index = i + 1;
  }
  return out;
}

Matrix4 dirac_operator(const Vector3& p, double energy, double mass) {
  const auto g = gamma_matrices();
  // p_mu = (E, -p)
  return energy * g.gamma[0] - p[0] * g.gamma[1] - p[1] * g.gamma[2] - p[2] * g.gamma[3] -
         mass * Matrix4::Identity();
}

DiracSpinorSolution plane_wave_solution(const Vector3& p, double mass, int energy_sign,
                                        int spin) {
  require_mass(mass);
  if (energy_sign != 1 && energy_sign != -1)
    throw ValidationError("energy_sign", "must be +1 or -1");
  if (spin != 1 && spin != 2) throw ValidationError("spin", "must be 1 or 2");

  const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  const double magnitude = std::sqrt(mass * mass + p2);
  const double energy = energy_sign * magnitude;

  Eigen::JacobiSVD<Matrix4> svd(dirac_operator(p, energy, mass));
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv(0));
  int null_dimension = 0;
  for (int i = 0; i < 4; ++i)
    if (sv(i) <= kNullTolerance * scale) ++null_dimension;
  if (null_dimension != 2)
    throw std::runtime_error("Dirac operator null space has dimension " +
                             std::to_string(null_dimension) + ", expected 2");

  const Eigen::Vector2cd chi = Eigen::Vector2cd::Unit(spin - 1);
  const Matrix2 sp = sigma_dot(p);
  Spinor u;
  if (energy_sign > 0) {
    u << chi, sp * chi / (magnitude + mass);
  } else {
    u << -sp * chi / (magnitude + mass), chi;
  }
  u.normalize();

  DiracSpinorSolution sol{u, p, mass, energy, energy_sign > 0 ? spin : 2 + spin};
  return sol;
}

double dirac_residual(const DiracSpinorSolution& sol) {
  return (dirac_operator(sol.momentum, sol.energy, sol.mass) * sol.spinor).cwiseAbs().maxCoeff();
}

FourVector probability_current(const DiracSpinorSolution& sol) {
  const auto g = gamma_matrices();
  FourVector j{};
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const complex value = sol.spinor.dot(g.gamma[0] * g.gamma[mu] * sol.spinor);
    if (std::abs(value.imag()) > 1e-14)
      throw std::logic_error("probability current component " + std::to_string(mu) +
                             " has imaginary part " + std::to_string(value.imag()));
    j[mu] = value.real();
  }
  return j;
}

}  // namespace dalab::dirac
