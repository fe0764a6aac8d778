#include <gtest/gtest.h>

#include <cmath>

#include "dalab/errors.hpp"
#include "dalab/propagators.hpp"

using namespace dalab;

namespace {

complex per_mode(double w, double t) { return std::polar(1.0, -w * std::abs(t)) / (2.0 * w); }

}  // namespace

TEST(FrequencyIntegral, ConvergesToPerModeKernel) {
  struct Case {
    double w, t, cutoff;
  };
  for (const auto& c : {Case{1.0, 0.0, 200.0}, Case{1.0, 2.0, 200.0}, Case{2.0, -1.0, 400.0},
                        Case{2.0, -1.0, 200.0}}) {
    const complex value = feynman_frequency_integral({c.w, c.t, 1e-6, c.cutoff});
    EXPECT_LE(std::abs(value - per_mode(c.w, c.t)), 1e-4) << c.w << " " << c.t;
  }
}

TEST(FrequencyIntegral, EvenInTime) {
  const complex a = feynman_frequency_integral({1.5, 0.8, 1e-6, 200.0});
  const complex b = feynman_frequency_integral({1.5, -0.8, 1e-6, 200.0});
  EXPECT_LE(std::abs(a - b), 1e-8);
}

TEST(FrequencyIntegral, RegulatorErrorShrinksWithEpsilon) {
  const double coarse = std::abs(feynman_frequency_integral({1.0, 1.0, 1e-2, 200.0}) -
                                 per_mode(1.0, 1.0));
  const double fine = std::abs(feynman_frequency_integral({1.0, 1.0, 1e-4, 200.0}) -
                               per_mode(1.0, 1.0));
  EXPECT_LT(fine, coarse);
}

TEST(FrequencyIntegral, ValidatesSpec) {
  EXPECT_THROW(feynman_frequency_integral({1.0, 0.0, 0.0, 200.0}), ValidationError);
  EXPECT_THROW(feynman_frequency_integral({1.0, 0.0, 1e-6, 5.0}), ValidationError);
  EXPECT_THROW(feynman_frequency_integral({0.0, 0.0, 1e-6, 200.0}), ValidationError);
}

TEST(FrequencySplit, PartsReassemble) {
  for (const auto& [w, t] : {std::pair{1.0, 0.0}, {1.0, 2.0}, {2.0, -1.0}}) {
    const auto split = feynman_frequency_split({w, t, 1e-6, 200.0});
    EXPECT_LE(split.residual, 1e-4);
  }
}

TEST(FrequencySplit, AnalyticParts) {
  const auto split = feynman_frequency_split({1.0, 2.0, 1e-6, 200.0});
  // delta(v^2 - w^2) = [delta(v - w) + delta(v + w)] / (2w)
  EXPECT_NEAR(split.delta_part.real(), std::cos(2.0) / 2.0, 1e-15);
  EXPECT_EQ(split.delta_part.imag(), 0.0);
  EXPECT_NEAR(split.pp_part.real(), 0.0, 1e-6);
  EXPECT_NEAR(split.pp_part.imag(), -std::sin(2.0) / 2.0, 1e-5);
}

TEST(FrequencySplit, PrincipalPartVanishesAtZeroTime) {
  const auto split = feynman_frequency_split({1.0, 0.0, 1e-6, 200.0});
  EXPECT_LE(std::abs(split.pp_part), 1e-5);
  EXPECT_NEAR(split.delta_part.real(), 0.5, 1e-15);
}

TEST(FrequencySplit, RejectsWideWindow) {
  EXPECT_THROW(feynman_frequency_split({1.0, 0.0, 1e-6, 200.0}, 0.6), ValidationError);
}
