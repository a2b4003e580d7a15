#include <gtest/gtest.h>

#include "manin/brauer.hpp"
#include "oracles.hpp"

using namespace manin;

namespace {

bool solvable_by_search(std::int64_t q, std::int64_t r) {
  const bool at_q = q % 3 == 2 || oracle::cube_exists(r, q);
  const bool at_r = r % 3 == 2 || oracle::cube_exists(q, r);
  return at_q && at_r;
}

}  // namespace

TEST(LocalSolvability, Examples) {
  EXPECT_TRUE(is_everywhere_locally_solvable(17, 53));
  EXPECT_TRUE(is_everywhere_locally_solvable(5, 23));
  EXPECT_FALSE(is_everywhere_locally_solvable(7, 2));
  EXPECT_THROW(c_br(7, 2), NotLocallySolvable);
  EXPECT_FALSE(brauer_data(7, 2).solvable);
  EXPECT_EQ(brauer_data(7, 2).c_br, 0);
}

TEST(LocalSolvability, MatchesCubeSearch) {
  const auto ps = primes_up_to(200);
  for (auto q : ps) {
    for (auto r : ps) {
      if (q == r || q == 3 || r == 3) continue;
      const auto qi = static_cast<std::int64_t>(q), ri = static_cast<std::int64_t>(r);
      ASSERT_EQ(is_everywhere_locally_solvable(qi, ri), solvable_by_search(qi, ri)) << q << ", " << r;
    }
  }
}

TEST(LocalSolvability, RejectsInvalidPairs) {
  EXPECT_THROW(is_everywhere_locally_solvable(5, 5), std::invalid_argument);
  EXPECT_THROW(is_everywhere_locally_solvable(3, 5), std::invalid_argument);
  EXPECT_THROW(is_everywhere_locally_solvable(4, 5), std::invalid_argument);
}

TEST(BrauerTable, NamedSurfaces) {
  EXPECT_EQ(c_br(17, 53), 1);
  EXPECT_EQ(c_br(71, 53), 1);
  EXPECT_EQ(c_br(5, 23), make_rational(1, 3));
  EXPECT_EQ(c_br(11, 29), make_rational(1, 3));
  EXPECT_EQ(brauer_data(named_surface("S5")).c_br, make_rational(1, 3));
  EXPECT_EQ(brauer_data(named_surface("S6")).c_br, make_rational(1, 3));
}

TEST(BrauerTable, SymmetricWithCubeClassRowsOne) {
  const unsigned classes[] = {1, 2, 4, 5, 7, 8};
  for (unsigned a : classes) {
    EXPECT_EQ(c_br_for_classes(1, a), 1);
    EXPECT_EQ(c_br_for_classes(8, a), 1);
    for (unsigned b : classes) {
      const Rational v = c_br_for_classes(a, b);
      EXPECT_EQ(v, c_br_for_classes(b, a));
      EXPECT_TRUE(v == 0 || v == make_rational(1, 3) || v == 1);
    }
  }
  EXPECT_THROW(c_br_for_classes(3, 1), std::invalid_argument);
}

TEST(BrauerTable, ZerosAreNormResidueMismatches) {
  const unsigned non_cube[] = {2, 4, 5, 7};
  for (unsigned a : non_cube) {
    for (unsigned b : non_cube) {
      EXPECT_EQ(c_br_for_classes(a, b) == 0, norm_residue_class(a) != norm_residue_class(b)) << a << ", " << b;
    }
  }
  EXPECT_THROW(norm_residue_class(1), std::invalid_argument);
}

TEST(BrauerTable, UnitFamily) {
  EXPECT_EQ(c_br_unit(2), make_rational(1, 3));
  EXPECT_EQ(c_br_unit(3), make_rational(1, 3));
  EXPECT_THROW(c_br_unit(5), std::invalid_argument);
  EXPECT_THROW(brauer_data(Surface::general({1, 2, 3, 4})), std::invalid_argument);
}

TEST(BrauerData, BetaAndClasses) {
  const auto d = brauer_data(17, 53);
  EXPECT_EQ(d.beta, 3);
  EXPECT_EQ(kBeta, 3);
  EXPECT_EQ(d.q_class, 8U);
  EXPECT_EQ(d.r_class, 8U);
  EXPECT_TRUE(d.solvable);
}
