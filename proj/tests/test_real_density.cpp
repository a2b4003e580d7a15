#include <gtest/gtest.h>

#include <algorithm>

#include "manin/real_density.hpp"
#include "oracles.hpp"

using namespace manin;

TEST(RealDensity, MatchesConvolutionOracle) {
  for (const auto& a : std::vector<std::array<std::int64_t, 4>>{
           {1, 1, 1, 2}, {1, 1, 1, 3}, {1, 2, -3, 4}, {1, 289, 901, 2809}, {1, 25, 115, 529}, {7, -1, 5, 2}}) {
    const auto r = real_density(Surface::general(a), 1e-9);
    const double ref = oracle::real_density_convolution(a);
    EXPECT_NEAR(r.value, ref, 1e-8 * ref) << a[1] << " " << a[3];
    EXPECT_TRUE(r.converged);
  }
}

TEST(RealDensity, PermutationInvariant) {
  std::array<std::int64_t, 4> a{1, 25, 115, 529};
  const double base = real_density(Surface::general(a), 1e-9).value;
  std::sort(a.begin(), a.end());
  do {
    EXPECT_NEAR(real_density(Surface::general(a), 1e-9).value, base, 1e-7 * base);
  } while (std::next_permutation(a.begin(), a.end()));
}

TEST(RealDensity, SignFlipInvariant) {
  const double a = real_density(Surface::general({1, 2, 3, 5}), 1e-9).value;
  const double b = real_density(Surface::general({-1, -2, -3, -5}), 1e-9).value;
  const double c = real_density(Surface::general({1, -2, 3, -5}), 1e-9).value;
  EXPECT_NEAR(a, b, 1e-9 * a);
  EXPECT_GT(c, 0);
}

TEST(RealDensity, TighterToleranceAgrees) {
  for (const char* id : kNamedSurfaceIds) {
    const auto s = named_surface(id);
    const auto coarse = real_density(s, 1e-6);
    const auto fine = real_density(s, 5e-7);
    EXPECT_NEAR(coarse.value, fine.value, std::max(10 * coarse.abs_error_estimate, 1e-6 * fine.value)) << id;
    EXPECT_TRUE(fine.converged) << id;
  }
}

TEST(RealDensity, ScalingLaw) {
  // Multiplying all coefficients by c scales the Leray measure by 1/c.
  const double a = real_density(Surface::general({1, 1, 1, 2}), 1e-9).value;
  const double b = real_density(Surface::general({3, 3, 3, 6}), 1e-9).value;
  EXPECT_NEAR(b, a / 3, 1e-7 * a);
}

TEST(RealDensity, RejectsBadTolerance) {
  EXPECT_THROW(real_density(Surface::unit(2), 0), std::invalid_argument);
  EXPECT_THROW(real_density(Surface::unit(2), -1), std::invalid_argument);
}
