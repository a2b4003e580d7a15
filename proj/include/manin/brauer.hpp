#pragma once

// Local solvability, the Brauer-Manin volume quotient C_Br and
// beta = #H^1(Q, Pic) for the two supported families.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "manin/number_theory.hpp"
#include "manin/surface.hpp"

namespace manin {

class NotLocallySolvable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BrauerData {
  bool solvable = false;
  Rational c_br;
  int beta = 3;
  unsigned q_class = 0;  // q mod 9
  unsigned r_class = 0;  // r mod 9
};

inline constexpr int kBeta = 3;

namespace detail {

inline void check_qr_pair(std::int64_t q, std::int64_t r) {
  if (q == r) throw std::invalid_argument("q and r must be distinct");
  if (q == 3 || r == 3) throw std::invalid_argument("q and r must differ from 3");
  if (q < 2 || r < 2 || !is_prime(static_cast<std::uint64_t>(q)) || !is_prime(static_cast<std::uint64_t>(r))) {
    throw std::invalid_argument("q and r must be primes");
  }
}

inline int class_index(unsigned c) {
  switch (c) {
    case 1: return 0;
    case 2: return 1;
    case 4: return 2;
    case 5: return 3;
    case 7: return 4;
    case 8: return 5;
    default: throw std::invalid_argument("class mod 9 must be prime to 3");
  }
}

// Entries in units of 1/3: 3 = 1, 1 = 1/3, 0 = 0. Rows and columns are the
// classes 1, 2, 4, 5, 7, 8 mod 9.
inline constexpr std::array<std::array<int, 6>, 6> kBrauerTable = {{
    {3, 3, 3, 3, 3, 3},
    {3, 1, 0, 0, 1, 3},
    {3, 0, 1, 1, 0, 3},
    {3, 0, 1, 1, 0, 3},
    {3, 1, 0, 0, 1, 3},
    {3, 3, 3, 3, 3, 3},
}};

inline bool is_cube_mod(std::int64_t n, std::int64_t p) {
  if (p % 3 == 2) return true;
  return is_cubic_residue(n, static_cast<std::uint64_t>(p));
}

}  // namespace detail

/// The class-pair lookup for residues prime to 3 modulo 9.
inline Rational c_br_for_classes(unsigned qc, unsigned rc) {
  const int e = detail::kBrauerTable[static_cast<std::size_t>(detail::class_index(qc))]
                                    [static_cast<std::size_t>(detail::class_index(rc))];
  return Rational(e, 3);
}

/// (q = 2 mod 3 or r is a cube mod q) and (r = 2 mod 3 or q is a cube mod r).
inline bool is_everywhere_locally_solvable(std::int64_t q, std::int64_t r) {
  detail::check_qr_pair(q, r);
  return detail::is_cube_mod(r, q) && detail::is_cube_mod(q, r);
}

inline Rational c_br(std::int64_t q, std::int64_t r) {
  if (!is_everywhere_locally_solvable(q, r)) {
    throw NotLocallySolvable("surface with q = " + std::to_string(q) + ", r = " + std::to_string(r) +
                             " is not everywhere locally solvable");
  }
  return c_br_for_classes(static_cast<unsigned>(q % 9), static_cast<unsigned>(r % 9));
}

inline Rational c_br_unit(std::int64_t k) {
  if (k != 2 && k != 3) throw std::invalid_argument("c_br_unit supports k = 2 or 3");
  return Rational(1, 3);
}

/// The norm-residue value [j, r]_r in {1, 2} for r prime to 3 and not a cube
/// class modulo 9, with j a primitive cube root of unity.
inline int norm_residue_class(unsigned r_mod_9) {
  switch (r_mod_9) {
    case 2: return 2;
    case 4: return 1;
    case 5: return 1;
    case 7: return 2;
    default: throw std::invalid_argument("norm residue class needs r = 2, 4, 5, 7 mod 9");
  }
}

inline BrauerData brauer_data(std::int64_t q, std::int64_t r) {
  BrauerData d;
  d.q_class = static_cast<unsigned>(q % 9);
  d.r_class = static_cast<unsigned>(r % 9);
  d.solvable = is_everywhere_locally_solvable(q, r);
  d.c_br = d.solvable ? c_br_for_classes(d.q_class, d.r_class) : Rational(0);
  d.beta = kBeta;
  return d;
}

inline BrauerData brauer_data(const Surface& s) {
  if (const auto* f = std::get_if<QRFamily>(&s.family())) return brauer_data(f->q, f->r);
  if (const auto* f = std::get_if<UnitFamily>(&s.family())) {
    BrauerData d;
    d.solvable = true;
    d.c_br = c_br_unit(f->k);
    d.beta = kBeta;
    return d;
  }
  throw std::invalid_argument("Brauer data is only available for the QR and unit families");
}

}  // namespace manin
