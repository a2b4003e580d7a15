#pragma once

// The absolutely convergent products over good primes,
//   C1 = prod_{p = 1 (3), nu = 3} (1 - 1/p)^7 (1 + 7/p + 1/p^2)
//   C2 = prod_{p = 1 (3), nu != 3} (1 - 1/p^3)^3
//   C3 = prod_{p = 2 (3)} (1 - 1/p^3)(1 - 1/p^2)^3
// truncated at a prime bound and summed in log space block by block.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "manin/local_densities.hpp"
#include "manin/number_theory.hpp"
#include "manin/surface.hpp"

namespace manin {

struct EulerProductResult {
  double value = 1.0;
  std::uint64_t prime_bound = 0;
  double tail_estimate = 0.0;  // bound on |log(true / truncated)|
  std::uint64_t primes_used = 0;
};

struct EulerProducts {
  EulerProductResult c1, c2, c3;
};

enum class GoodClass { C1, C2, C3 };

inline Rational rpow(const Rational& b, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline GoodClass classify_good_prime(const Surface& s, std::uint64_t p) {
  if (p % 3 == 2) return GoodClass::C3;
  return surface_nu(s, p).nu == 3 ? GoodClass::C1 : GoodClass::C2;
}

/// Exact local factor assigned to a good prime.
inline Rational euler_factor(GoodClass c, std::uint64_t p) {
  const Rational x(BigInt(1), BigInt(p));
  switch (c) {
    case GoodClass::C1: return rpow(1 - x, 7) * (1 + 7 * x + x * x);
    case GoodClass::C2: return rpow(1 - x * x * x, 3);
    case GoodClass::C3: return (1 - x * x * x) * rpow(1 - x * x, 3);
  }
  throw std::logic_error("unknown class");
}

namespace detail {

inline double log_euler_factor(GoodClass c, double p) {
  const double x = 1.0 / p;
  switch (c) {
    case GoodClass::C1: return 7 * std::log1p(-x) + std::log1p(7 * x + x * x);
    case GoodClass::C2: return 3 * std::log1p(-x * x * x);
    case GoodClass::C3: return std::log1p(-x * x * x) + 3 * std::log1p(-x * x);
  }
  return 0;
}

struct BlockSums {
  long double log[3] = {0, 0, 0};
  std::uint64_t count[3] = {0, 0, 0};
};

// Fast residuosity tests for the attached fields, avoiding Rational work.
struct GoodPrimeClassifier {
  std::vector<std::int64_t> coeffs;
  std::vector<std::uint64_t> fields;
  bool unit;

  explicit GoodPrimeClassifier(const Surface& s)
      : coeffs(s.coeffs().begin(), s.coeffs().end()), fields(cubic_fields(s)), unit(s.is_unit()) {}

  bool good(std::uint64_t p) const {
    if (p == 3) return false;
    for (auto a : coeffs) {
      if (mod_floor(a, p) == 0) return false;
    }
    return true;
  }

  GoodClass classify(std::uint64_t p) const {
    if (p % 3 == 2) return GoodClass::C3;
    const std::uint64_t e = (p - 1) / 3;
    if (unit) return powmod(fields[0] % p, e, p) == 1 ? GoodClass::C1 : GoodClass::C2;
    // The three fields are q, r, qr, so nu = 3 iff q and r are both cubes.
    const bool cq = powmod(fields[0] % p, e, p) == 1;
    const bool cr = powmod(fields[1] % p, e, p) == 1;
    return cq && cr ? GoodClass::C1 : GoodClass::C2;
  }
};

// Sum over p > B of c / p^k, bounded by c * integral_B^inf dx / (x^k ln x).
inline double prime_tail(double c, int k, double B) {
  return c / ((k - 1) * std::pow(B, k - 1) * std::log(B));
}

}  // namespace detail

/// All three products at once. Blocks of the segmented sieve are processed by
/// `threads` workers and reduced in block order, so the result does not depend
/// on the thread count.
inline EulerProducts compute_euler_products(const Surface& s, std::uint64_t B, unsigned threads = 1) {
  if (B < 1000) throw std::invalid_argument("euler products need a prime bound >= 1000");
  const detail::GoodPrimeClassifier cls(s);
  const std::vector<std::uint64_t> base = primes_up_to(isqrt(B) + 1);
  constexpr std::uint64_t kBlock = 1U << 18;
  const std::uint64_t nblocks = (B + kBlock) / kBlock;
  std::vector<detail::BlockSums> sums(nblocks);
  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t lo = b * kBlock;
    const std::uint64_t hi = std::min(lo + kBlock, B + 1);
    auto& out = sums[b];
    sieve_segment(lo, hi, base, [&](std::uint64_t p) {
      if (!cls.good(p)) return;
      const GoodClass c = cls.classify(p);
      const int i = static_cast<int>(c);
      out.log[i] += detail::log_euler_factor(c, static_cast<double>(p));
      ++out.count[i];
    });
  };
  threads = std::max(1U, threads);
  if (threads == 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t b = t; b < nblocks; b += threads) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }
  long double total[3] = {0, 0, 0};
  std::uint64_t count[3] = {0, 0, 0};
  for (const auto& bs : sums) {
    for (int i = 0; i < 3; ++i) {
      total[i] += bs.log[i];
      count[i] += bs.count[i];
    }
  }
  const double Bd = static_cast<double>(B);
  EulerProducts out;
  out.c1 = {static_cast<double>(std::exp(total[0])), B, detail::prime_tail(22, 2, Bd), count[0]};
  out.c2 = {static_cast<double>(std::exp(total[1])), B, detail::prime_tail(3, 3, Bd), count[1]};
  out.c3 = {static_cast<double>(std::exp(total[2])), B, detail::prime_tail(4, 2, Bd), count[2]};
  return out;
}

inline EulerProductResult compute_C1(const Surface& s, std::uint64_t B) { return compute_euler_products(s, B).c1; }
inline EulerProductResult compute_C2(const Surface& s, std::uint64_t B) { return compute_euler_products(s, B).c2; }
inline EulerProductResult compute_C3(const Surface& s, std::uint64_t B) { return compute_euler_products(s, B).c3; }

}  // namespace manin
