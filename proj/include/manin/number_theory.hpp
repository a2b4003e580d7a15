#pragma once

// Integer and modular arithmetic shared by the rest of the library: primality,
// prime sieves, exact cube roots, cubic residuosity and the splitting of
// rational primes in pure cubic fields Q(m^(1/3)).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace manin {

using i128 = __int128;
using u128 = unsigned __int128;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline std::string rational_string(const Rational& x) {
  const BigInt n = numerator(x);
  const BigInt d = denominator(x);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Nonnegative residue of a (possibly negative) integer.
inline std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  const std::int64_t r = a % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

// Miller-Rabin with the first twelve prime bases; deterministic below 3.3e24.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// All primes <= bound in increasing order.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

/// Segmented sieve of Eratosthenes over [lo, hi); `base` must contain every
/// prime <= sqrt(hi). Calls fn(p) for each prime in increasing order.
template <class Fn>
void sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& base,
                   Fn&& fn) {
  if (hi <= lo) return;
  std::vector<char> composite(hi - lo, 0);
  for (std::uint64_t p : base) {
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t j = start; j < hi; j += p) composite[j - lo] = 1;
  }
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n) {
    if (!composite[n - lo]) fn(n);
  }
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// floor(cbrt(n)) for any signed 128-bit n with |n| < 2^126.
inline i128 icbrt_floor(i128 n) {
  if (n < 0) {
    // floor(cbrt(n)) = -ceil(cbrt(-n))
    const i128 m = -n;
    i128 r = icbrt_floor(m);
    return (r * r * r == m) ? -r : -(r + 1);
  }
  auto r = static_cast<i128>(std::cbrt(static_cast<long double>(n)));
  while (r > 0 && r * r * r > n) --r;
  while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Exact integer cube root if n is a perfect cube.
inline bool exact_cbrt(i128 n, i128& root) {
  root = icbrt_floor(n);
  return root * root * root == n;
}

template <class Int>
Int gcd_abs(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct PrimeClass {
  std::uint64_t p;
  unsigned residue_mod_3;

  explicit PrimeClass(std::uint64_t prime) : p(prime), residue_mod_3(static_cast<unsigned>(prime % 3)) {
    if (!is_prime(prime)) throw std::invalid_argument(std::to_string(prime) + " is not prime");
  }
};

/// n is a cube in F_p^* for p = 1 mod 3 and p not dividing n.
inline bool is_cubic_residue(std::int64_t n, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("is_cubic_residue: modulus is not prime");
  if (p % 3 != 1) throw std::invalid_argument("is_cubic_residue: requires p = 1 mod 3");
  const std::uint64_t a = mod_floor(n, p);
  if (a == 0) throw std::invalid_argument("is_cubic_residue: p divides n");
  return powmod(a, (p - 1) / 3, p) == 1;
}

struct NuValue {
  int nu;
};

/// Number of the fields Q(q^(1/3)), Q(r^(1/3)), Q((qr)^(1/3)) in which p splits
/// completely, for a good prime p = 1 mod 3.
inline NuValue nu(std::int64_t q, std::int64_t r, std::uint64_t p) {
  if (p % 3 != 1) throw std::invalid_argument("nu: requires p = 1 mod 3");
  if (mod_floor(q, p) == 0 || mod_floor(r, p) == 0 || p == 3) {
    throw std::invalid_argument("nu: p must not divide 3qr");
  }
  const std::uint64_t qm = mod_floor(q, p);
  const std::uint64_t rm = mod_floor(r, p);
  int count = 0;
  count += is_cubic_residue(static_cast<std::int64_t>(qm), p) ? 1 : 0;
  count += is_cubic_residue(static_cast<std::int64_t>(rm), p) ? 1 : 0;
  count += is_cubic_residue(static_cast<std::int64_t>(mulmod(qm, rm, p)), p) ? 1 : 0;
  return {count};
}

inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_cubefree(std::uint64_t m) {
  for (auto [p, e] : factorize(m)) {
    if (e >= 3) return false;
  }
  return true;
}

/// Reduces every prime exponent modulo 3; Q(m^(1/3)) = Q(kernel^(1/3)).
inline std::uint64_t cubefree_kernel(std::uint64_t m) {
  std::uint64_t k = 1;
  for (auto [p, e] : factorize(m)) {
    for (int i = 0; i < e % 3; ++i) k *= p;
  }
  return k;
}

enum class SplittingShape { SplitCompletely, Inert, OneTwo, TotallyRamified, OneRamifiedSquare };

inline const char* to_string(SplittingShape s) {
  switch (s) {
    case SplittingShape::SplitCompletely: return "SplitCompletely";
    case SplittingShape::Inert: return "Inert";
    case SplittingShape::OneTwo: return "OneTwo";
    case SplittingShape::TotallyRamified: return "TotallyRamified";
    case SplittingShape::OneRamifiedSquare: return "OneRamifiedSquare";
  }
  return "?";
}

struct PrimeAbove {
  std::uint64_t norm;  // #F_P = p^f
  int e;
  int f;
};

struct SplittingType {
  SplittingShape shape;
  std::vector<PrimeAbove> primes;

  std::vector<std::uint64_t> norms_above_p() const {
    std::vector<std::uint64_t> n;
    for (const auto& pr : primes) n.push_back(pr.norm);
    return n;
  }

  /// prod over P | p of (1 - 1/#F_P).
  Rational residue_field_factor() const {
    Rational x(1);
    for (const auto& pr : primes) x *= Rational(1) - Rational(BigInt(1), BigInt(pr.norm));
    return x;
  }

  /// Number of ideals of norm p^k.
  std::uint64_t ideals_of_norm_power(unsigned k) const {
    switch (shape) {
      case SplittingShape::SplitCompletely: return static_cast<std::uint64_t>(k + 1) * (k + 2) / 2;
      case SplittingShape::Inert: return k % 3 == 0 ? 1 : 0;
      case SplittingShape::OneTwo: return k / 2 + 1;
      case SplittingShape::TotallyRamified: return 1;
      case SplittingShape::OneRamifiedSquare: return k + 1;
    }
    return 0;
  }
};

inline SplittingType make_splitting(SplittingShape shape, std::uint64_t p) {
  switch (shape) {
    case SplittingShape::SplitCompletely: return {shape, {{p, 1, 1}, {p, 1, 1}, {p, 1, 1}}};
    case SplittingShape::Inert: return {shape, {{p * p * p, 1, 3}}};
    case SplittingShape::OneTwo: return {shape, {{p, 1, 1}, {p * p, 1, 2}}};
    case SplittingShape::TotallyRamified: return {shape, {{p, 3, 1}}};
    case SplittingShape::OneRamifiedSquare: return {shape, {{p, 1, 1}, {p, 2, 1}}};
  }
  throw std::logic_error("unknown splitting shape");
}

/// Shape of the factorization of p in Q(m^(1/3)), m cubefree and > 1.
inline SplittingType splitting_in_pure_cubic(std::uint64_t m, std::uint64_t p) {
  if (m <= 1 || !is_cubefree(m)) {
    throw std::invalid_argument("splitting_in_pure_cubic: m must be cubefree and > 1");
  }
  if (!is_prime(p)) throw std::invalid_argument("splitting_in_pure_cubic: p is not prime");
  if (p == 3) {
    const std::uint64_t r = m % 9;
    return make_splitting(r == 1 || r == 8 ? SplittingShape::OneRamifiedSquare
                                           : SplittingShape::TotallyRamified,
                          p);
  }
  if (m % p == 0) return make_splitting(SplittingShape::TotallyRamified, p);
  if (p % 3 == 2) return make_splitting(SplittingShape::OneTwo, p);
  return make_splitting(powmod(m % p, (p - 1) / 3, p) == 1 ? SplittingShape::SplitCompletely
                                                           : SplittingShape::Inert,
                        p);
}

}  // namespace manin
