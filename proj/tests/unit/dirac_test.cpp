#include <gtest/gtest.h>

#include <cmath>

#include "dalab/dirac.hpp"
#include "dalab/errors.hpp"

using namespace dalab::dirac;

TEST(Gamma, CliffordAlgebra) {
  const auto g = gamma_matrices();
  EXPECT_LE(clifford_residual(g), 1e-15);
  EXPECT_TRUE((g.gamma[0] * g.gamma[0]).isIdentity(0.0));
  EXPECT_TRUE((g.gamma[1] * g.gamma[1] + Matrix4::Identity()).isZero(0.0));
  EXPECT_TRUE((g.gamma[0] * g.gamma[1] + g.gamma[1] * g.gamma[0]).isZero(0.0));
}

TEST(Gamma, Hermiticity) {
  const auto g = gamma_matrices();
  EXPECT_TRUE(g.gamma[0].isApprox(g.gamma[0].adjoint()));
  for (int i = 1; i < 4; ++i) EXPECT_TRUE(g.gamma[i].isApprox(-g.gamma[i].adjoint()));
}

TEST(RestFrame, BasisVectorsWithSignedEnergy) {
  const auto sols = rest_frame_solutions(1.0);
  EXPECT_EQ(sols[0].spinor, Spinor(1, 0, 0, 0));
  EXPECT_EQ(sols[0].energy, 1.0);
  EXPECT_EQ(sols[2].spinor, Spinor(0, 0, 1, 0));
  EXPECT_EQ(sols[2].energy, -1.0);
  for (const auto& s : sols) EXPECT_LE(dirac_residual(s), 1e-15);
  EXPECT_THROW(rest_frame_solutions(0.0), dalab::ValidationError);
}

TEST(RestFrame, OrthonormalBasis) {
  const auto sols = rest_frame_solutions(2.0);
  Matrix4 gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram(i, j) = sols[i].spinor.dot(sols[j].spinor);
  EXPECT_TRUE(gram.isIdentity(0.0));
}

TEST(PlaneWave, ReducesToRestFrameAtZeroMomentum) {
  const auto rest = rest_frame_solutions(1.5);
  for (int sign : {1, -1}) {
    for (int spin : {1, 2}) {
      const auto s = plane_wave_solution({0.0, 0.0, 0.0}, 1.5, sign, spin);
      const auto& r = rest[static_cast<std::size_t>(s.index - 1)];
      EXPECT_EQ(s.spinor, r.spinor);
      EXPECT_EQ(s.energy, r.energy);
    }
  }
}

TEST(PlaneWave, SolvesDiracEquation) {
  const auto s = plane_wave_solution({0.5, 0.0, 0.0}, 1.0, 1, 1);
  EXPECT_LE(dirac_residual(s), 1e-12);
  const auto n = plane_wave_solution({0.5, 0.0, 0.0}, 1.0, -1, 1);
  EXPECT_DOUBLE_EQ(n.energy, -std::sqrt(1.25));
  for (const Vector3 p : {Vector3{0.5, 0, 0}, Vector3{0.3, -1.2, 2.0}, Vector3{0, 0, 7.0}})
    for (int sign : {1, -1})
      for (int spin : {1, 2}) EXPECT_LE(dirac_residual(plane_wave_solution(p, 0.8, sign, spin)), 1e-12);
}

TEST(PlaneWave, RejectsBadLabels) {
  EXPECT_THROW(plane_wave_solution({0, 0, 0}, 1.0, 0, 1), dalab::ValidationError);
  EXPECT_THROW(plane_wave_solution({0, 0, 0}, 1.0, 1, 3), dalab::ValidationError);
  EXPECT_THROW(plane_wave_solution({0, 0, 0}, -1.0, 1, 1), dalab::ValidationError);
}

TEST(Current, RestFrameDensityWithoutFlux) {
  for (const auto& s : rest_frame_solutions(1.0)) {
    const auto j = probability_current(s);
    EXPECT_DOUBLE_EQ(j[0], 1.0);
    EXPECT_EQ(j[1], 0.0);
    EXPECT_EQ(j[2], 0.0);
    EXPECT_EQ(j[3], 0.0);
  }
}

TEST(Current, NegativeEnergyFluxOpposesMomentumLabel) {
  const Vector3 p{0.5, 0.0, 0.0};
  for (int spin : {1, 2}) {
    const auto j = probability_current(plane_wave_solution(p, 1.0, -1, spin));
    EXPECT_LT(j[1] * p[0], 0.0);
    const auto jp = probability_current(plane_wave_solution(p, 1.0, 1, spin));
    EXPECT_GT(jp[1] * p[0], 0.0);
  }
}

TEST(Current, VelocityRatio) {
  for (const Vector3 p : {Vector3{0.5, 0, 0}, Vector3{-2.0, 0.4, 1.1}}) {
    for (int sign : {1, -1}) {
      for (int spin : {1, 2}) {
        const auto s = plane_wave_solution(p, 1.0, sign, spin);
        const auto j = probability_current(s);
        EXPECT_NEAR(j[0], 1.0, 1e-12);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(j[i + 1] / j[0], p[i] / s.energy, 1e-12);
      }
    }
  }
}
