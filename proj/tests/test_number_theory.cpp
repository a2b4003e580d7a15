#include <gtest/gtest.h>

#include "manin/number_theory.hpp"
#include "manin/surface.hpp"
#include "oracles.hpp"

using namespace manin;

TEST(CubicResidue, SmallExamples) {
  EXPECT_TRUE(is_cubic_residue(1, 7));
  EXPECT_FALSE(is_cubic_residue(2, 7));
  EXPECT_TRUE(is_cubic_residue(6, 7));
  EXPECT_TRUE(is_cubic_residue(-1, 7));
}

TEST(CubicResidue, RejectsInvalidModuli) {
  EXPECT_THROW(is_cubic_residue(2, 5), std::invalid_argument);
  EXPECT_THROW(is_cubic_residue(14, 7), std::invalid_argument);
  EXPECT_THROW(is_cubic_residue(2, 49), std::invalid_argument);
}

TEST(CubicResidue, AgreesWithExhaustiveSearchBelow500) {
  for (std::uint64_t p : primes_up_to(500)) {
    if (p % 3 != 1) continue;
    for (std::int64_t n = 1; n < static_cast<std::int64_t>(p); ++n) {
      ASSERT_EQ(is_cubic_residue(n, p), oracle::cube_exists(n, static_cast<std::int64_t>(p))) << n << " mod " << p;
    }
  }
}

TEST(Nu, WorkedExample) { EXPECT_EQ(nu(17, 53, 7).nu, 0); }

TEST(Nu, SymmetricAndInZeroOneThree) {
  const std::vector<std::pair<std::int64_t, std::int64_t>> pairs = {{17, 53}, {71, 53}, {5, 23}, {11, 29}};
  for (auto [q, r] : pairs) {
    for (std::uint64_t p : primes_up_to(10000)) {
      if (p % 3 != 1 || q % static_cast<std::int64_t>(p) == 0 || r % static_cast<std::int64_t>(p) == 0) continue;
      const int v = nu(q, r, p).nu;
      ASSERT_EQ(v, nu(r, q, p).nu);
      ASSERT_TRUE(v == 0 || v == 1 || v == 3) << "nu = " << v << " at p = " << p;
    }
  }
}

TEST(Nu, BothCubesGiveThree) {
  for (std::uint64_t p : primes_up_to(2000)) {
    if (p % 3 != 1 || p == 17 || p == 53) continue;
    if (is_cubic_residue(17, p) && is_cubic_residue(53, p)) {
      EXPECT_EQ(nu(17, 53, p).nu, 3);
    }
  }
}

TEST(Nu, RejectsBadPrimes) {
  EXPECT_THROW(nu(17, 53, 5), std::invalid_argument);
  EXPECT_THROW(nu(7, 53, 7), std::invalid_argument);
}

TEST(Splitting, Examples) {
  auto s = splitting_in_pure_cubic(17, 7);
  EXPECT_EQ(s.shape, SplittingShape::Inert);
  EXPECT_EQ(s.norms_above_p(), (std::vector<std::uint64_t>{343}));

  s = splitting_in_pure_cubic(17, 5);
  EXPECT_EQ(s.shape, SplittingShape::OneTwo);
  EXPECT_EQ(s.norms_above_p(), (std::vector<std::uint64_t>{5, 25}));

  s = splitting_in_pure_cubic(17, 3);
  EXPECT_EQ(s.shape, SplittingShape::OneRamifiedSquare);
  EXPECT_EQ(s.norms_above_p(), (std::vector<std::uint64_t>{3, 3}));

  s = splitting_in_pure_cubic(5, 3);
  EXPECT_EQ(s.shape, SplittingShape::TotallyRamified);
  EXPECT_EQ(s.norms_above_p(), (std::vector<std::uint64_t>{3}));

  EXPECT_EQ(splitting_in_pure_cubic(17, 17).shape, SplittingShape::TotallyRamified);
  EXPECT_EQ(splitting_in_pure_cubic(2, 31).shape, SplittingShape::SplitCompletely);
}

TEST(Splitting, RejectsBadInput) {
  EXPECT_THROW(splitting_in_pure_cubic(16, 5), std::invalid_argument);
  EXPECT_THROW(splitting_in_pure_cubic(1, 5), std::invalid_argument);
  EXPECT_THROW(splitting_in_pure_cubic(17, 9), std::invalid_argument);
}

TEST(Splitting, DegreesSumToThree) {
  const std::size_t expected_len[] = {3, 1, 2, 1, 2};
  for (std::uint64_t m : {2ULL, 3ULL, 17ULL, 53ULL, 901ULL, 115ULL, 319ULL, 3763ULL}) {
    for (std::uint64_t p : primes_up_to(300)) {
      const auto s = splitting_in_pure_cubic(m, p);
      int total = 0;
      for (const auto& pr : s.primes) {
        total += pr.e * pr.f;
        std::uint64_t pf = 1;
        for (int i = 0; i < pr.f; ++i) pf *= p;
        EXPECT_EQ(pr.norm, pf);
      }
      EXPECT_EQ(total, 3);
      EXPECT_EQ(s.primes.size(), expected_len[static_cast<int>(s.shape)]);
    }
  }
}

TEST(Splitting, ConsistentWithResiduosity) {
  for (std::uint64_t m : {2ULL, 17ULL, 901ULL}) {
    for (std::uint64_t p : primes_up_to(3000)) {
      if (p % 3 != 1 || m % p == 0) continue;
      EXPECT_EQ(splitting_in_pure_cubic(m, p).shape == SplittingShape::SplitCompletely,
                is_cubic_residue(static_cast<std::int64_t>(m), p));
    }
  }
}

TEST(Splitting, IdealCountsPerShape) {
  const auto sc = make_splitting(SplittingShape::SplitCompletely, 7);
  EXPECT_EQ(sc.ideals_of_norm_power(2), 6U);
  const auto in = make_splitting(SplittingShape::Inert, 7);
  EXPECT_EQ(in.ideals_of_norm_power(3), 1U);
  EXPECT_EQ(in.ideals_of_norm_power(2), 0U);
  const auto ot = make_splitting(SplittingShape::OneTwo, 5);
  EXPECT_EQ(ot.ideals_of_norm_power(2), 2U);
  EXPECT_EQ(ot.ideals_of_norm_power(3), 2U);
  const auto tr = make_splitting(SplittingShape::TotallyRamified, 3);
  EXPECT_EQ(tr.ideals_of_norm_power(5), 1U);
  const auto rs = make_splitting(SplittingShape::OneRamifiedSquare, 3);
  EXPECT_EQ(rs.ideals_of_norm_power(2), 3U);
}

TEST(Primes, SmallBounds) {
  EXPECT_EQ(primes_up_to(2), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(primes_up_to(10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(primes_up_to(30), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_TRUE(primes_up_to(1).empty());
}

TEST(Primes, SieveMatchesTrialDivision) {
  const auto ps = primes_up_to(20000);
  std::size_t i = 0;
  for (std::int64_t n = 0; n <= 20000; ++n) {
    const bool expect = oracle::is_prime(n);
    ASSERT_EQ(is_prime(static_cast<std::uint64_t>(n)), expect) << n;
    if (expect) {
      ASSERT_EQ(ps[i++], static_cast<std::uint64_t>(n));
    }
  }
  EXPECT_EQ(i, ps.size());
}

TEST(Primes, SegmentedSieveMatches) {
  const auto base = primes_up_to(1000);
  std::vector<std::uint64_t> got;
  sieve_segment(900000, 1000000, base, [&](std::uint64_t p) { got.push_back(p); });
  std::vector<std::uint64_t> expect;
  for (std::uint64_t n = 900000; n < 1000000; ++n) {
    if (is_prime(n)) expect.push_back(n);
  }
  EXPECT_EQ(got, expect);
}

TEST(Primes, LargeDeterministic) {
  EXPECT_TRUE(is_prime(2305843009213693951ULL));  // 2^61 - 1
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
}

TEST(Cbrt, FloorAndExact) {
  EXPECT_EQ(icbrt_floor(27), 3);
  EXPECT_EQ(icbrt_floor(26), 2);
  EXPECT_EQ(icbrt_floor(-27), -3);
  EXPECT_EQ(icbrt_floor(-26), -3);
  EXPECT_EQ(icbrt_floor(0), 0);
  const i128 big = static_cast<i128>(1000000007) * 1000000007 * 1000000007;
  EXPECT_TRUE(icbrt_floor(big) == 1000000007);
  EXPECT_TRUE(icbrt_floor(big - 1) == 1000000006);
  i128 root;
  EXPECT_TRUE(exact_cbrt(-big, root));
  EXPECT_TRUE(root == -1000000007);
  EXPECT_FALSE(exact_cbrt(big + 1, root));
}

TEST(Cubefree, Kernel) {
  EXPECT_EQ(cubefree_kernel(16), 2U);
  EXPECT_EQ(cubefree_kernel(901), 901U);
  EXPECT_EQ(cubefree_kernel(24), 3U);
  EXPECT_TRUE(is_cubefree(17 * 17 * 53));
  EXPECT_FALSE(is_cubefree(54));
}

TEST(PrimeClassType, Residue) {
  EXPECT_EQ(PrimeClass(17).residue_mod_3, 2U);
  EXPECT_EQ(PrimeClass(3).residue_mod_3, 0U);
  EXPECT_THROW(PrimeClass(15), std::invalid_argument);
}

TEST(SurfaceType, Families) {
  const auto s1 = named_surface("S1");
  EXPECT_EQ(s1.coeffs(), (std::array<std::int64_t, 4>{1, 289, 901, 2809}));
  EXPECT_TRUE(s1.is_qr());
  EXPECT_EQ(named_surface("S6").coeffs(), (std::array<std::int64_t, 4>{1, 1, 1, 3}));
  EXPECT_THROW(Surface::qr(3, 5), std::invalid_argument);
  EXPECT_THROW(Surface::qr(5, 5), std::invalid_argument);
  EXPECT_THROW(Surface::qr(4, 5), std::invalid_argument);
  EXPECT_THROW(Surface::unit(5), std::invalid_argument);
  EXPECT_THROW(Surface::general({1, 0, 1, 1}), std::invalid_argument);
  EXPECT_THROW(named_surface("S7"), std::invalid_argument);
  EXPECT_TRUE(s1.evaluate({1, 0, 0, 0}) == 1);
}
