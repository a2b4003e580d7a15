#pragma once

// Published factor tables for the six test surfaces, as decimals.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reference {

struct Column {
  std::string id;
  std::int64_t H;
  std::uint64_t n;
  double c_br;
  int beta;
  std::vector<double> zeta;             // q, r, qr; or the single unit field
  std::vector<double> bad;              // at 3, then q, then r (unit: 3, then 2)
  std::vector<std::uint64_t> bad_primes;
  double c1, c2, c3;
  double omega;
  double theta;
  double ratio;
  int decimals;                         // printed precision of the column
};

inline const std::vector<Column>& columns() {
  static const std::vector<Column> c = {
      {"S1", 29967, 1104, 1, 3, {1.4680, 1.8172, 1.9342}, {0.5926, 0.9379, 0.9808}, {3, 17, 53},
       0.9979, 0.9892, 0.3103, 0.0148, 0.0383, 0.9626, 4},
      {"S2", 29996, 497, 1, 3, {2.2035, 1.8172, 1.9925}, {0.5926, 0.9857, 0.9808}, {3, 71, 53},
       0.9989, 0.9892, 0.3072, 0.0042, 0.0175, 0.9476, 4},
      {"S3", 29982, 718, 1.0 / 3, 3, {1.1637, 1.1879, 1.0865}, {0.6667, 0.7680, 0.9547}, {3, 5, 23},
       0.9974, 0.9892, 0.3514, 0.0918, 0.0234, 1.0243, 4},
      {"S4", 19962, 578, 1.0 / 3, 3, {1.2284, 1.6792, 1.0543}, {1.3333, 0.9016, 0.9644}, {3, 11, 29},
       0.9813, 0.9893, 0.3158, 0.0388, 0.0300, 0.9664, 4},
      {"S5", 99997, 205431, 1.0 / 3, 3, {0.814624}, {1.333333, 0.750000}, {3, 2},
       0.954038, 0.989387, 0.830682, 4.921515, 2.086108, 0.984787, 6},
      {"S6", 99999, 115582, 1.0 / 3, 3, {1.017615}, {0.888889}, {3},
       0.976203, 0.989279, 0.306638, 4.295619, 1.191539, 0.970032, 6},
  };
  return c;
}

inline const Column& column(const std::string& id) {
  for (const auto& c : columns()) {
    if (c.id == id) return c;
  }
  throw std::invalid_argument("no reference column " + id);
}

}  // namespace reference
