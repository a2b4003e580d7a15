#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "manin/number_theory.hpp"

namespace manin {

/// X0^3 + q^2 X1^3 + qr X2^3 + r^2 X3^3 = 0 with q, r distinct primes, 3 not dividing qr.
struct QRFamily {
  std::int64_t q;
  std::int64_t r;
};

/// X0^3 + X1^3 + X2^3 + k X3^3 = 0 with k in {2, 3}.
struct UnitFamily {
  std::int64_t k;
};

struct GeneralFamily {};

using Family = std::variant<QRFamily, UnitFamily, GeneralFamily>;

/// Diagonal cubic surface a0 x0^3 + a1 x1^3 + a2 x2^3 + a3 x3^3 = 0 in P^3.
class Surface {
 public:
  static Surface general(std::array<std::int64_t, 4> coeffs) {
    for (auto a : coeffs) {
      if (a == 0) throw std::invalid_argument("surface coefficients must be nonzero");
    }
    return Surface(coeffs, GeneralFamily{});
  }

  static Surface qr(std::int64_t q, std::int64_t r) {
    if (q <= 1 || r <= 1 || q == r || !is_prime(static_cast<std::uint64_t>(q)) ||
        !is_prime(static_cast<std::uint64_t>(r))) {
      throw std::invalid_argument("QR family needs distinct primes q, r");
    }
    if (q == 3 || r == 3) throw std::invalid_argument("QR family needs 3 not dividing qr");
    return Surface({1, q * q, q * r, r * r}, QRFamily{q, r});
  }

  static Surface unit(std::int64_t k) {
    if (k != 2 && k != 3) throw std::invalid_argument("unit family supports k = 2 or 3");
    return Surface({1, 1, 1, k}, UnitFamily{k});
  }

  const std::array<std::int64_t, 4>& coeffs() const { return coeffs_; }
  std::int64_t coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  const Family& family() const { return family_; }

  bool is_qr() const { return std::holds_alternative<QRFamily>(family_); }
  bool is_unit() const { return std::holds_alternative<UnitFamily>(family_); }

  std::string coeff_string() const {
    std::ostringstream os;
    os << coeffs_[0] << ',' << coeffs_[1] << ',' << coeffs_[2] << ',' << coeffs_[3];
    return os.str();
  }

  /// Exact value of the form at an integer point.
  i128 evaluate(const std::array<std::int64_t, 4>& x) const {
    i128 s = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      const i128 xi = x[i];
      s += static_cast<i128>(coeffs_[i]) * xi * xi * xi;
    }
    return s;
  }

 private:
  Surface(std::array<std::int64_t, 4> c, Family f) : coeffs_(c), family_(f) {}

  std::array<std::int64_t, 4> coeffs_;
  Family family_;
};

/// The six test surfaces, normalized to (1, q^2, qr, r^2) for S1..S4.
inline Surface named_surface(const std::string& id) {
  if (id == "S1") return Surface::qr(17, 53);
  if (id == "S2") return Surface::qr(71, 53);
  if (id == "S3") return Surface::qr(5, 23);
  if (id == "S4") return Surface::qr(11, 29);
  if (id == "S5") return Surface::unit(2);
  if (id == "S6") return Surface::unit(3);
  throw std::invalid_argument("unknown surface id '" + id + "' (expected S1..S6)");
}

inline constexpr std::array<const char*, 6> kNamedSurfaceIds = {"S1", "S2", "S3", "S4", "S5", "S6"};

}  // namespace manin
