#pragma once

// Residue at s = 1 of the Dedekind zeta function of Q(m^(1/3)), estimated as
// the mean number of integral ideals of norm <= X.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "manin/number_theory.hpp"

namespace manin {

enum class ResidueMethod { IdealAverage };

struct ResidueEstimate {
  std::uint64_t m = 0;
  double value = 0;      // extrapolated from X/2 and X
  double raw = 0;        // S(X) / X
  double raw_half = 0;   // S(X/2) / (X/2)
  std::uint64_t X = 0;
  ResidueMethod method = ResidueMethod::IdealAverage;
};

namespace detail {

// a_P for primes P <= X that are 1 mod 3 and prime to m: 3 if m is a cube
// modulo P, else 0. Stored as one bit per integer.
class CubeResidueBitmap {
 public:
  CubeResidueBitmap(std::uint64_t m, std::uint64_t X, const std::vector<std::uint64_t>& base)
      : bits_((X >> 6) + 1, 0) {
    constexpr std::uint64_t kBlock = 1U << 20;
    for (std::uint64_t lo = 0; lo <= X; lo += kBlock) {
      sieve_segment(lo, std::min(lo + kBlock, X + 1), base, [&](std::uint64_t p) {
        if (p % 3 != 1 || m % p == 0) return;
        if (powmod(m % p, (p - 1) / 3, p) == 1) bits_[p >> 6] |= std::uint64_t{1} << (p & 63U);
      });
    }
  }

  bool test(std::uint64_t p) const { return (bits_[p >> 6] >> (p & 63U)) & 1U; }

 private:
  std::vector<std::uint64_t> bits_;
};

struct SmallPrimeData {
  std::uint64_t p;
  std::vector<std::uint32_t> coeff;  // a_{p^k}, k = 0, 1, ...
};

inline void check_ideal_count_args(std::uint64_t m, std::uint64_t X) {
  if (m <= 1 || !is_cubefree(m)) throw std::invalid_argument("ideal counts need a cubefree m > 1");
  if (X > 4'000'000'000ULL) throw std::invalid_argument("ideal count bound must stay below 4e9");
}

}  // namespace detail

/// Streams (n, a_n) for 1 <= n <= X in increasing n, where a_n is the number of
/// integral ideals of norm n in Q(m^(1/3)). Blocks are handed to fn(lo, a)
/// with a[i] = a_{lo + i}.
template <class BlockFn>
void for_each_ideal_count_block(std::uint64_t m, std::uint64_t X, BlockFn&& fn, unsigned threads = 1) {
  detail::check_ideal_count_args(m, X);
  const std::uint64_t root = isqrt(X);
  const auto base = primes_up_to(root + 1);
  std::vector<detail::SmallPrimeData> small;
  for (std::uint64_t p : base) {
    if (p > root) break;
    const SplittingType sp = splitting_in_pure_cubic(m, p);
    detail::SmallPrimeData d{p, {}};
    for (std::uint64_t pk = 1, k = 0;; ++k) {
      d.coeff.push_back(static_cast<std::uint32_t>(sp.ideals_of_norm_power(static_cast<unsigned>(k))));
      if (pk > X / p) break;
      pk *= p;
    }
    small.push_back(std::move(d));
  }
  const detail::CubeResidueBitmap residues(m, X, base);
  auto large_prime_coeff = [&](std::uint64_t P) -> std::uint32_t {
    if (P % 3 == 2 || m % P == 0) return 1;
    return residues.test(P) ? 3 : 0;
  };

  constexpr std::uint64_t kBlock = 1U << 18;
  auto compute = [&](std::uint64_t lo, std::vector<std::uint32_t>& rem, std::vector<std::uint32_t>& a) {
    const std::uint64_t hi = std::min(lo + kBlock, X + 1);
    const std::size_t len = static_cast<std::size_t>(hi - lo);
    rem.resize(len);
    a.assign(len, 1);
    for (std::size_t i = 0; i < len; ++i) rem[i] = static_cast<std::uint32_t>(lo + i);
    for (const auto& d : small) {
      const std::uint64_t p = d.p;
      const auto p32 = static_cast<std::uint32_t>(p);
      for (std::uint64_t j = std::max(p, (lo + p - 1) / p * p); j < hi; j += p) {
        const std::size_t i = static_cast<std::size_t>(j - lo);
        std::uint32_t r = rem[i] / p32;
        std::size_t k = 1;
        while (r % p32 == 0) {
          r /= p32;
          ++k;
        }
        rem[i] = r;
        a[i] *= d.coeff[k];
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (rem[i] > 1) a[i] *= large_prime_coeff(rem[i]);
    }
    if (lo == 0) a[0] = 0;
    fn(lo, a);
  };

  threads = std::max(1U, threads);
  const std::uint64_t nblocks = X / kBlock + 1;
  if (threads == 1) {
    std::vector<std::uint32_t> rem, a;
    for (std::uint64_t b = 0; b < nblocks; ++b) compute(b * kBlock, rem, a);
    return;
  }
  // fn is called concurrently from several workers in this mode.
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      std::vector<std::uint32_t> rem, a;
      for (std::uint64_t b = t; b < nblocks; b += threads) compute(b * kBlock, rem, a);
    });
  }
  for (auto& th : pool) th.join();
}

/// a_1, ..., a_X as a vector indexed by n (entry 0 unused).
inline std::vector<std::uint32_t> ideal_count_coefficients(std::uint64_t m, std::uint64_t X) {
  detail::check_ideal_count_args(m, X);
  std::vector<std::uint32_t> out(static_cast<std::size_t>(X + 1), 0);
  for_each_ideal_count_block(m, X, [&](std::uint64_t lo, const std::vector<std::uint32_t>& a) {
    std::copy(a.begin(), a.end(), out.begin() + static_cast<std::ptrdiff_t>(lo));
  });
  return out;
}

/// Local factor prod_{P | p} (1 - N(P)^-s)^-1 of zeta_K at a real s.
inline double local_zeta_factor(std::uint64_t m, std::uint64_t p, double s) {
  double f = 1;
  for (const auto& pr : splitting_in_pure_cubic(m, p).primes) {
    f /= 1 - std::pow(static_cast<double>(pr.norm), -s);
  }
  return f;
}

/// Mean ideal count at X, with a two-point extrapolation from X/2 and X that
/// assumes an error term c X^(-1/3).
inline ResidueEstimate residue(std::uint64_t m, std::uint64_t X, unsigned threads = 1) {
  if (X < 1'000'000) throw std::invalid_argument("residue needs X >= 10^6");
  m = cubefree_kernel(m);
  const std::uint64_t half = X / 2;
  const std::uint64_t nchunks = X / (1U << 18) + 1;
  std::vector<std::uint64_t> below_half(nchunks, 0), total(nchunks, 0);
  for_each_ideal_count_block(
      m, X,
      [&](std::uint64_t lo, const std::vector<std::uint32_t>& a) {
        std::uint64_t s = 0, sh = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          s += a[i];
          if (lo + i <= half) sh += a[i];
        }
        const std::uint64_t b = lo >> 18;
        total[b] = s;
        below_half[b] = sh;
      },
      threads);
  std::uint64_t S = 0, Sh = 0;
  for (std::uint64_t b = 0; b < nchunks; ++b) {
    S += total[b];
    Sh += below_half[b];
  }
  ResidueEstimate e;
  e.m = m;
  e.X = X;
  e.raw = static_cast<double>(S) / static_cast<double>(X);
  e.raw_half = static_cast<double>(Sh) / static_cast<double>(half);
  const double c = std::cbrt(2.0);
  e.value = (c * e.raw - e.raw_half) / (c - 1);
  return e;
}

}  // namespace manin
