#include <gtest/gtest.h>

#include <cmath>

#include "manin/constant.hpp"
#include "reference_values.hpp"

using namespace manin;

namespace {

double recompose(const reference::Column& c) {
  std::vector<double> zeta = c.zeta;
  if (zeta.size() == 1) zeta.assign(3, zeta[0]);
  return theta_from_factors(c.c_br, c.beta, zeta, c.bad, c.c1, c.c2, c.c3, c.omega);
}

AssemblyConfig small_config() {
  AssemblyConfig cfg;
  cfg.euler_bound = 200'000;
  cfg.zeta_bound = 2'000'000;
  cfg.quad_tol = 1e-6;
  return cfg;
}

}  // namespace

TEST(ThetaFromFactors, RecomposesPublishedColumns) {
  for (const auto& c : reference::columns()) {
    EXPECT_NEAR(recompose(c), c.theta, 5e-3 * c.theta) << c.id;
  }
}

TEST(ThetaFromFactors, Arithmetic) {
  EXPECT_DOUBLE_EQ(theta_from_factors(0.5, 3, {2, 3}, {0.5}, 1, 1, 1, 2), 0.5 * 3 * 6 * 0.5 * 2);
  EXPECT_EQ(theta_from_factors(0, 3, {2}, {}, 1, 1, 1, 1), 0);
}

TEST(Assemble, HasseFailureSurface) {
  std::optional<std::pair<std::int64_t, std::int64_t>> pair;
  for (auto q : primes_up_to(200)) {
    for (auto r : primes_up_to(200)) {
      if (q % 9 != 2 || r % 9 != 4) continue;
      const auto qi = static_cast<std::int64_t>(q), ri = static_cast<std::int64_t>(r);
      if (is_everywhere_locally_solvable(qi, ri)) pair.emplace(qi, ri);
    }
  }
  ASSERT_TRUE(pair.has_value());
  EXPECT_THROW(assemble(Surface::qr(pair->first, pair->second), small_config()), HasseFailure);
}

TEST(Assemble, NotLocallySolvable) {
  EXPECT_THROW(assemble(Surface::qr(7, 2), small_config()), NotLocallySolvable);
}

TEST(Assemble, UnsupportedFamily) {
  EXPECT_THROW(assemble(Surface::general({1, 2, 3, 5}), small_config()), std::invalid_argument);
}

TEST(Assemble, UnitSurfaceWithSmallBounds) {
  const auto b = assemble(named_surface("S5"), small_config(), "S5");
  EXPECT_EQ(b.surface_id, "S5");
  EXPECT_EQ(b.fields, (std::vector<std::uint64_t>{2, 2, 2}));
  EXPECT_EQ(b.zeta_residues.size(), 3U);
  EXPECT_EQ(b.c_br, make_rational(1, 3));
  EXPECT_EQ(b.bad_factor(3), make_rational(4, 3));
  EXPECT_EQ(b.bad_factor(2), make_rational(3, 4));
  EXPECT_FALSE(b.bad_factor(5).has_value());
  EXPECT_NEAR(b.theta, reference::column("S5").theta, 0.03 * b.theta);
  EXPECT_GT(b.theta_rel_error, 0);
  EXPECT_LT(b.theta_rel_error, 0.05);
}

TEST(Assemble, ThreadedMatchesSerial) {
  auto cfg = small_config();
  const auto a = assemble(named_surface("S3"), cfg);
  cfg.threads = 3;
  const auto b = assemble(named_surface("S3"), cfg);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.fields, (std::vector<std::uint64_t>{5, 23, 115}));
}

TEST(Compare, RatioArithmetic) {
  ConstantBreakdown b;
  b.theta = 0.5;
  const auto r = compare(100, 40, b);
  EXPECT_DOUBLE_EQ(r.ratio, 0.8);
  EXPECT_EQ(r.n, 40U);
  b.theta = 0;
  EXPECT_THROW(compare(100, 40, b), std::invalid_argument);
}

TEST(Compare, RunsEnumeration) {
  const auto b = assemble(named_surface("S6"), small_config());
  const auto r = compare(named_surface("S6"), 2000, b);
  EXPECT_GT(r.n, 0U);
  EXPECT_NEAR(r.ratio, 1.0, 0.2);
}
