#pragma once

// p-adic densities of the cone over a diagonal cubic surface, the convergence
// factors lambda'_p, and their product at every prime.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "manin/number_theory.hpp"
#include "manin/surface.hpp"

namespace manin {

/// Raised when an exhaustive computation would exceed its work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PadicCount {
  std::uint64_t p;
  unsigned r;
  std::uint64_t N_all;   // solutions in (Z/p^r)^4
  std::uint64_t N_star;  // solutions with some coordinate a unit

  /// N_star / p^(3r).
  Rational star_density() const {
    BigInt den = 1;
    for (unsigned i = 0; i < 3 * r; ++i) den *= p;
    return Rational(BigInt(N_star), den);
  }
};

enum class Provenance { GoodClosedForm, LemmaBad, Lemma3Table, Oracle };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::GoodClosedForm: return "good-closed-form";
    case Provenance::LemmaBad: return "lemma-bad";
    case Provenance::Lemma3Table: return "lemma-3-table";
    case Provenance::Oracle: return "oracle";
  }
  return "?";
}

struct LocalFactor {
  std::uint64_t p = 0;
  Rational value;          // lambda'_p * omega_p
  Provenance provenance = Provenance::GoodClosedForm;
  Rational lambda;         // lambda'_p
  Rational omega;          // omega_p
  std::optional<Rational> raw_density;  // limit of N_star / p^(3r) when computed
  unsigned r_used = 0;
  bool stabilized = true;
};

/// Exhaustive work limit for count_mod_pr, in units of (p^r)^2.
inline constexpr std::uint64_t kPadicBudget = 1'000'000'000;

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t x = 1;
  for (unsigned i = 0; i < e; ++i) x *= b;
  return x;
}

// Distribution of a x^3 mod M over x in Z/M, as (value, multiplicity).
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> cube_histogram(std::int64_t a, std::uint64_t M) {
  std::vector<std::uint64_t> h(M, 0);
  const std::uint64_t am = mod_floor(a, M);
  for (std::uint64_t x = 0; x < M; ++x) {
    const std::uint64_t c = mulmod(mulmod(x, x, M), x, M);
    ++h[mulmod(am, c, M)];
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t v = 0; v < M; ++v) {
    if (h[v]) out.emplace_back(v, h[v]);
  }
  return out;
}

inline std::vector<std::uint64_t> convolve(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& f,
                                           const std::vector<std::pair<std::uint64_t, std::uint64_t>>& g,
                                           std::uint64_t M) {
  std::vector<std::uint64_t> out(M, 0);
  for (const auto& [u, c] : f) {
    for (const auto& [v, d] : g) {
      const std::uint64_t w = u + v;
      out[w >= M ? w - M : w] += c * d;
    }
  }
  return out;
}

// Number of solutions of the form in (Z/M)^4.
inline std::uint64_t cone_solutions(const Surface& s, std::uint64_t M) {
  if (M == 1) return 1;
  const auto A = convolve(cube_histogram(s.coeff(0), M), cube_histogram(s.coeff(1), M), M);
  const auto B = convolve(cube_histogram(s.coeff(2), M), cube_histogram(s.coeff(3), M), M);
  std::uint64_t n = A[0] * B[0];
  for (std::uint64_t c = 1; c < M; ++c) n += A[c] * B[M - c];
  return n;
}

}  // namespace detail

/// Exact counts of solutions modulo p^r. The work is O(p^(2r)) and must stay
/// within kPadicBudget.
inline PadicCount count_mod_pr(const Surface& s, std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw std::invalid_argument("count_mod_pr: p is not prime");
  if (r < 1) throw std::invalid_argument("count_mod_pr: r must be >= 1");
  long double work = 1;
  for (unsigned i = 0; i < 2 * r; ++i) work *= static_cast<long double>(p);
  if (work > static_cast<long double>(kPadicBudget)) {
    throw BudgetExceeded("count_mod_pr: p^(2r) = " + std::to_string(static_cast<double>(work)) +
                         " exceeds the budget of " + std::to_string(kPadicBudget));
  }
  const std::uint64_t M = detail::ipow(p, r);
  const std::uint64_t all = detail::cone_solutions(s, M);
  // Tuples in (pZ/p^r)^4: x = p y; the form gains p^3, so y only matters
  // modulo p^(r-3) and each such solution lifts to p^8 tuples y mod p^(r-1).
  const std::uint64_t divisible =
      r <= 3 ? detail::ipow(p, 4 * (r - 1)) : detail::ipow(p, 8) * detail::cone_solutions(s, detail::ipow(p, r - 3));
  return {p, r, all, all - divisible};
}

/// Largest r with p^(2r) inside the count_mod_pr budget.
inline unsigned max_feasible_r(std::uint64_t p) {
  unsigned r = 0;
  long double w = 1;
  while (w * p * p <= static_cast<long double>(kPadicBudget)) {
    w *= static_cast<long double>(p) * p;
    ++r;
  }
  return r;
}

/// Projective points over F_p, from the affine cone count.
inline std::uint64_t projective_point_count(const Surface& s, std::uint64_t p) {
  const PadicCount c = count_mod_pr(s, p, 1);
  return (c.N_all - 1) / (p - 1);
}

inline bool divides_coefficients_or_3(const Surface& s, std::uint64_t p) {
  if (p == 3) return true;
  for (auto a : s.coeffs()) {
    if (mod_floor(a, p) == 0) return true;
  }
  return false;
}

/// The pure cubic fields attached to a supported surface, with multiplicity.
inline std::vector<std::uint64_t> cubic_fields(const Surface& s) {
  if (const auto* f = std::get_if<QRFamily>(&s.family())) {
    const auto q = static_cast<std::uint64_t>(f->q);
    const auto r = static_cast<std::uint64_t>(f->r);
    return {q, r, cubefree_kernel(q * r)};
  }
  if (const auto* f = std::get_if<UnitFamily>(&s.family())) {
    const auto k = static_cast<std::uint64_t>(f->k);
    return {k, k, k};
  }
  throw std::invalid_argument("cubic fields are only defined for the QR and unit families");
}

/// Number of the attached fields in which a good p = 1 mod 3 splits completely.
inline NuValue surface_nu(const Surface& s, std::uint64_t p) {
  if (const auto* f = std::get_if<QRFamily>(&s.family())) return nu(f->q, f->r, p);
  if (const auto* f = std::get_if<UnitFamily>(&s.family())) {
    if (p % 3 != 1 || f->k % static_cast<std::int64_t>(p) == 0) throw std::invalid_argument("surface_nu: bad prime");
    return {is_cubic_residue(f->k, p) ? 3 : 0};
  }
  throw std::invalid_argument("surface_nu: unsupported family");
}

/// #V(F_p) / p^2 at a good prime.
inline Rational good_prime_count(const Surface& s, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("good_prime_count: p is not prime");
  if (divides_coefficients_or_3(s, p)) throw std::invalid_argument("good_prime_count: p is a bad prime");
  const Rational inv(BigInt(1), BigInt(p));
  if (p % 3 == 2) return 1 + inv + inv * inv;
  const int v = surface_nu(s, p).nu;
  return 1 + (3 * v - 2) * inv + inv * inv;
}

/// lambda'_p = prod_i prod_{P | p} (1 - 1/N(P)) / (1 - 1/p)^2 over the
/// attached fields.
inline Rational lambda_prime(const Surface& s, std::uint64_t p) {
  Rational num(1);
  for (std::uint64_t m : cubic_fields(s)) num *= splitting_in_pure_cubic(m, p).residue_field_factor();
  const Rational c = 1 - Rational(BigInt(1), BigInt(p));
  return num / (c * c);
}

/// (1 - p^-delta) / (1 - p^-1), the prefactor between the Leray density and
/// omega_p. A cubic surface in P^3 has delta = 1.
inline Rational leray_prefactor(std::uint64_t p, unsigned delta = 1) {
  BigInt pd = 1;
  for (unsigned i = 0; i < delta; ++i) pd *= p;
  return (1 - Rational(BigInt(1), pd)) / (1 - Rational(BigInt(1), BigInt(p)));
}

/// omega_p from the limiting density of N_star.
inline Rational omega_from_star_density(const Rational& star, std::uint64_t p) {
  const Rational pre = leray_prefactor(p);
  if (pre != 1) throw std::logic_error("Leray prefactor must be 1 for delta = 1");
  return pre * star / (1 - Rational(BigInt(1), BigInt(p)));
}

/// Good prime: lambda'_p * #V(F_p)/p^2.
inline LocalFactor good_local_factor(const Surface& s, std::uint64_t p) {
  LocalFactor f;
  f.p = p;
  f.provenance = Provenance::GoodClosedForm;
  f.lambda = lambda_prime(s, p);
  f.omega = good_prime_count(s, p);
  f.value = f.lambda * f.omega;
  return f;
}

/// Computes N_star / p^(3r) at r = 1, 2, ... until two consecutive levels
/// r-1 >= 1 and r agree, or the budget runs out (stabilized = false).
inline LocalFactor density_via_oracle(const Surface& s, std::uint64_t p) {
  const unsigned rmax = max_feasible_r(p);
  if (rmax < 2) throw BudgetExceeded("density_via_oracle: budget does not allow r = 2 at p = " + std::to_string(p));
  LocalFactor f;
  f.p = p;
  f.provenance = Provenance::Oracle;
  Rational prev = count_mod_pr(s, p, 1).star_density();
  f.stabilized = false;
  f.r_used = 1;
  for (unsigned r = 2; r <= rmax; ++r) {
    const Rational cur = count_mod_pr(s, p, r).star_density();
    f.r_used = r;
    if (cur == prev) {
      f.stabilized = true;
      break;
    }
    prev = cur;
  }
  f.raw_density = prev;
  f.lambda = lambda_prime(s, p);
  f.omega = omega_from_star_density(prev, p);
  f.value = f.lambda * f.omega;
  return f;
}

/// N*(3^2)/3^6 for the QR family with q = +-r mod 9, keyed by q mod 9.
inline std::optional<Rational> three_adic_table(std::int64_t q, std::int64_t r) {
  const std::uint64_t qm = mod_floor(q, 9);
  const std::uint64_t rm = mod_floor(r, 9);
  if (qm != rm && (qm + rm) % 9 != 0) return std::nullopt;
  switch (qm) {
    case 1:
    case 8: return Rational(2);
    case 2:
    case 7: return Rational(4, 3);
    case 4:
    case 5: return Rational(2, 3);
    default: return std::nullopt;
  }
}

/// lambda'_p * omega_p at a prime dividing 3 times the coefficients.
inline LocalFactor bad_prime_factor(const Surface& s, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("bad_prime_factor: p is not prime");
  if (!divides_coefficients_or_3(s, p)) throw std::invalid_argument("bad_prime_factor: p is a good prime");
  if (const auto* f = std::get_if<QRFamily>(&s.family())) {
    const bool divides_qr = static_cast<std::int64_t>(p) == f->q || static_cast<std::int64_t>(p) == f->r;
    std::optional<Rational> star;
    Provenance prov = Provenance::LemmaBad;
    if (divides_qr && p % 3 == 2 && p != 2) {
      star = 1 - Rational(BigInt(1), BigInt(p));
    } else if (p == 3) {
      star = three_adic_table(f->q, f->r);
      prov = Provenance::Lemma3Table;
    }
    if (star) {
      LocalFactor lf;
      lf.p = p;
      lf.provenance = prov;
      lf.raw_density = *star;
      lf.lambda = lambda_prime(s, p);
      lf.omega = omega_from_star_density(*star, p);
      lf.value = lf.lambda * lf.omega;
      return lf;
    }
  }
  return density_via_oracle(s, p);
}

/// Primes dividing 3 times the coefficients.
inline std::vector<std::uint64_t> bad_primes(const Surface& s) {
  std::vector<std::uint64_t> out{3};
  for (auto a : s.coeffs()) {
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(a < 0 ? -a : a))) {
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline LocalFactor local_factor(const Surface& s, std::uint64_t p) {
  return divides_coefficients_or_3(s, p) ? bad_prime_factor(s, p) : good_local_factor(s, p);
}

}  // namespace manin
