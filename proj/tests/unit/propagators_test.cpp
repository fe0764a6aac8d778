#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dalab/propagators.hpp"
#include "oracle_values.hpp"

using namespace dalab;

namespace {

constexpr complex kI{0.0, 1.0};

Lattice default_lattice(int n = 64) {
  LatticeSpec s;
  s.spatial_points = n;
  return Lattice(s);
}

// Unpaired sums in index order, straight from the kernel definitions.
struct Naive {
  complex plus, minus;
};

Naive naive(const Lattice& lattice, double t, double x) {
  complex sp{}, sm{};
  for (const auto& m : lattice.modes()) {
    const double phi = m.frequency * t - m.momentum * x;
    sp += std::exp(-kI * phi) / (2.0 * m.frequency);
    sm += std::exp(kI * phi) / (2.0 * m.frequency);
  }
  const double L = lattice.box_length();
  return {-kI * sp / L, kI * sm / L};
}

complex naive_kind(const Lattice& lattice, KernelKind kind, double t, double x) {
  const auto [p, m] = naive(lattice, t, x);
  const double step = t > 0 ? 1.0 : 0.0;
  const double back = t < 0 ? 1.0 : 0.0;
  switch (kind) {
    case KernelKind::WightmanPlus: return p;
    case KernelKind::WightmanMinus: return m;
    case KernelKind::Commutator: return p + m;
    case KernelKind::Hadamard: return 0.5 * (p - m);
    case KernelKind::Retarded: return step * (p + m);
    case KernelKind::Advanced: return -back * (p + m);
    case KernelKind::TimeSymmetric: return 0.5 * (step - back) * (p + m);
    case KernelKind::Feynman: return step * p - back * m;
  }
  return {};
}

void expect_close(complex a, complex b, double tol) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(Kernels, MatchFrozenHighPrecisionSums) {
  const auto lattice = default_lattice();
  constexpr double tol = 1e-14;
  expect_close(eval_kernel(lattice, KernelKind::WightmanPlus, 0.5, 0.0),
               oracle::kWightmanPlus_t0p5_x0, tol);
  expect_close(eval_kernel(lattice, KernelKind::WightmanMinus, 0.5, 2.0),
               oracle::kWightmanMinus_t0p5_x2, tol);
  expect_close(eval_kernel(lattice, KernelKind::Commutator, 0.7, 1.3),
               oracle::kCommutator_t0p7_x1p3, tol);
  expect_close(eval_kernel(lattice, KernelKind::TimeSymmetric, 0.7, 1.3),
               oracle::kTimeSymmetric_t0p7_x1p3, tol);
  expect_close(eval_kernel(lattice, KernelKind::Feynman, -0.5, 1.3),
               oracle::kFeynman_tm0p5_x1p3, tol);
  expect_close(eval_kernel(default_lattice(16), KernelKind::Feynman, 0.8, 2.1),
               oracle::kFeynmanN16_t0p8_x2p1, tol);
}

TEST(Kernels, PairedSumsAgreeWithNaiveSums) {
  const auto lattice = default_lattice();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(-4.0, 4.0), x(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double ti = t(rng), xi = x(rng);
    for (auto kind : kAllKernelKinds)
      expect_close(eval_kernel(lattice, kind, ti, xi), naive_kind(lattice, kind, ti, xi), 1e-13);
  }
}

TEST(Kernels, StepKindsRejectZeroTime) {
  const auto lattice = default_lattice();
  for (auto kind : kAllKernelKinds) {
    if (uses_step_function(kind))
      EXPECT_THROW(eval_kernel(lattice, kind, 0.0, 1.0), std::domain_error) << to_string(kind);
    else
      EXPECT_NO_THROW(eval_kernel(lattice, kind, 0.0, 1.0));
  }
}

TEST(Kernels, EqualTimeCommutatorVanishes) {
  const auto lattice = default_lattice();
  for (double x : {0.0, 0.3, 2.5, 7.9})
    EXPECT_LT(std::abs(eval_kernel(lattice, KernelKind::Commutator, 0.0, x)), 1e-15);
}

TEST(Kernels, TimeParity) {
  const auto lattice = default_lattice();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(0.05, 4.0), x(0.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double ti = t(rng), xi = x(rng);
    auto k = [&](KernelKind kind, double s) { return eval_kernel(lattice, kind, s, xi); };
    expect_close(k(KernelKind::TimeSymmetric, ti), k(KernelKind::TimeSymmetric, -ti), 1e-15);
    expect_close(k(KernelKind::Commutator, ti), -k(KernelKind::Commutator, -ti), 1e-15);
    expect_close(k(KernelKind::Hadamard, ti), k(KernelKind::Hadamard, -ti), 1e-15);
  }
  expect_close(eval_kernel(lattice, KernelKind::TimeSymmetric, 0.7, 1.3),
               eval_kernel(lattice, KernelKind::TimeSymmetric, -0.7, 1.3), 0.0);
}

TEST(Kernels, RealAndImaginaryParts) {
  const auto lattice = default_lattice();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> t(0.05, 4.0), x(0.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double ti = t(rng), xi = x(rng);
    EXPECT_LE(std::abs(eval_kernel(lattice, KernelKind::Commutator, ti, xi).imag()), 1e-12);
    EXPECT_LE(std::abs(eval_kernel(lattice, KernelKind::TimeSymmetric, -ti, xi).imag()), 1e-12);
    EXPECT_LE(std::abs(eval_kernel(lattice, KernelKind::Hadamard, ti, xi).real()), 1e-12);
  }
}

TEST(Kernels, SpatialPeriodicity) {
  const auto lattice = default_lattice();
  const double L = lattice.box_length();
  for (auto kind : kAllKernelKinds) {
    for (double x : {0.0, 1.3, 9.99}) {
      expect_close(eval_kernel(lattice, kind, SpacetimePoint(0.7, x, L)),
                   eval_kernel(lattice, kind, SpacetimePoint(0.7, x + L, L)), 1e-13);
      expect_close(eval_kernel(lattice, kind, 0.7, x), eval_kernel(lattice, kind, 0.7, x + L),
                   1e-13);
    }
  }
}

TEST(SpacetimePointTest, ReducesIntoBox) {
  EXPECT_DOUBLE_EQ(SpacetimePoint(0.0, 12.5, 10.0).x(), 2.5);
  EXPECT_DOUBLE_EQ(SpacetimePoint(0.0, -2.5, 10.0).x(), 7.5);
  EXPECT_EQ(SpacetimePoint(0.0, 10.0, 10.0).x(), 0.0);
  const auto d = SpacetimePoint(1.0, 1.0, 10.0) - SpacetimePoint(3.0, 4.0, 10.0);
  EXPECT_DOUBLE_EQ(d.t(), -2.0);
  EXPECT_DOUBLE_EQ(d.x(), 7.0);
  EXPECT_THROW(SpacetimePoint(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(Decomposition, BranchesOfTheTimeOrderedKernel) {
  const auto lattice = default_lattice();
  EXPECT_EQ(eval_kernel(lattice, KernelKind::Feynman, 0.5, 1.1),
            eval_kernel(lattice, KernelKind::WightmanPlus, 0.5, 1.1));
  EXPECT_EQ(eval_kernel(lattice, KernelKind::Feynman, -0.5, 1.1),
            -eval_kernel(lattice, KernelKind::WightmanMinus, -0.5, 1.1));
}

TEST(Decomposition, HoldsAtRandomPoints) {
  const auto lattice = default_lattice();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> t(0.05, 5.0), x(0.0, 10.0);
  std::vector<SpacetimePoint> points;
  for (int i = 0; i < 1000; ++i) points.emplace_back(i % 2 ? t(rng) : -t(rng), x(rng), 10.0);
  EXPECT_LE(feynman_decomposition_residual(lattice, points), 1e-12);

  const SpacetimePoint bad[] = {SpacetimePoint(0.0, 1.0, 10.0)};
  EXPECT_THROW(feynman_decomposition_residual(lattice, bad), std::domain_error);
}

TEST(Decomposition, MidpointKeepsIdentityAtEqualTimes) {
  const auto lattice = default_lattice();
  for (double x : {0.0, 0.4, 3.3}) {
    auto k = [&](KernelKind kind) { return eval_kernel_midpoint(lattice, kind, 0.0, x); };
    expect_close(k(KernelKind::Feynman), k(KernelKind::TimeSymmetric) + k(KernelKind::Hadamard),
                 1e-15);
  }
}

TEST(Antisymmetry, CoincidentPairAndRandomPairs) {
  const auto lattice = default_lattice();
  const SpacetimePoint p(0.3, 4.4, 10.0);
  const std::pair<SpacetimePoint, SpacetimePoint> same[] = {{p, p}};
  EXPECT_EQ(wightman_antisymmetry_residual(lattice, same), 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t(-5.0, 5.0), x(0.0, 10.0);
  std::vector<std::pair<SpacetimePoint, SpacetimePoint>> pairs;
  for (int i = 0; i < 1000; ++i)
    pairs.emplace_back(SpacetimePoint(t(rng), x(rng), 10.0), SpacetimePoint(t(rng), x(rng), 10.0));
  EXPECT_LE(wightman_antisymmetry_residual(lattice, pairs), 1e-12);
}

TEST(EdgeModeControl, KernelsRefuseUnclosedGrid) {
  LatticeSpec s;
  s.spatial_points = 16;
  const auto lattice = Lattice::with_edge_mode(s);
  EXPECT_THROW(eval_kernel(lattice, KernelKind::WightmanPlus, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(eval_kernel_midpoint(lattice, KernelKind::Hadamard, 0.5, 1.0),
               std::invalid_argument);
}

TEST(EdgeModeControl, ClosureDependentIdentitiesBreak) {
  LatticeSpec s;
  s.spatial_points = 16;
  const auto open = Lattice::with_edge_mode(s);
  const auto closed = Lattice(s);
  using detail::eval_kernel_unchecked;

  // Equal-time commutator and oddness in t need the k -> -k relabelling.
  const double x = 0.37;
  EXPECT_GT(std::abs(eval_kernel_unchecked(open, KernelKind::Commutator, 0.0, x)), 1e-6);
  EXPECT_LT(std::abs(eval_kernel_unchecked(closed, KernelKind::Commutator, 0.0, x)), 1e-15);
  const complex odd = eval_kernel_unchecked(open, KernelKind::Commutator, 0.6, x) +
                      eval_kernel_unchecked(open, KernelKind::Commutator, -0.6, x);
  EXPECT_GT(std::abs(odd), 1e-6);

  // D+(x) + D-(-x) cancels term by term, so it survives without closure.
  const complex pair = eval_kernel_unchecked(open, KernelKind::WightmanPlus, 0.6, x) +
                       eval_kernel_unchecked(open, KernelKind::WightmanMinus, -0.6, -x);
  EXPECT_LT(std::abs(pair), 1e-15);
}

TEST(KernelKinds, NamesRoundTrip) {
  for (auto kind : kAllKernelKinds) EXPECT_EQ(parse_kernel_kind(to_string(kind)), kind);
  EXPECT_FALSE(parse_kernel_kind("photon").has_value());
}

TEST(KernelSamples, OneRowPerTime) {
  const auto lattice = default_lattice();
  const std::vector<double> times{0.1, 0.2, 0.3};
  const auto rows = sample_kernel(lattice, KernelKind::Feynman, times, 12.0);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[1].x, 2.0);
  EXPECT_EQ(rows[2].value, eval_kernel(lattice, KernelKind::Feynman, 0.3, 2.0));
}
