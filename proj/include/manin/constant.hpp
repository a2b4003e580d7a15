#pragma once

// Assembly of the leading constant theta = alpha * beta * tau for the QR and
// unit families, and comparison against point counts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "manin/brauer.hpp"
#include "manin/enumerator.hpp"
#include "manin/euler_products.hpp"
#include "manin/local_densities.hpp"
#include "manin/real_density.hpp"
#include "manin/surface.hpp"
#include "manin/zeta_residues.hpp"

namespace manin {

/// The Brauer set is empty: theta_H = 0 and no rational points exist.
class HasseFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AssemblyConfig {
  std::uint64_t euler_bound = 10'000'000;
  std::uint64_t zeta_bound = 100'000'000;
  double quad_tol = 1e-6;
  unsigned threads = 1;
};

inline constexpr int kAlpha = 1;

struct ConstantBreakdown {
  std::string surface_id;
  std::array<std::int64_t, 4> coeffs{};
  Rational c_br;
  int alpha = kAlpha;
  int beta = kBeta;
  std::vector<std::uint64_t> fields;          // one per factor, with multiplicity
  std::vector<ResidueEstimate> zeta_residues;  // parallel to fields
  std::vector<LocalFactor> bad_factors;        // ascending p
  EulerProducts euler;
  RealDensityResult omega_real;
  double theta = 0;
  double theta_rel_error = 0;

  /// lambda'_p omega_p at a bad prime, if p is one.
  std::optional<Rational> bad_factor(std::uint64_t p) const {
    for (const auto& f : bad_factors) {
      if (f.p == p) return f.value;
    }
    return std::nullopt;
  }
};

struct ComparisonReport {
  std::int64_t H = 0;
  std::uint64_t n = 0;
  double theta = 0;
  double ratio = 0;
};

/// The product formula itself, on plain numbers.
inline double theta_from_factors(double c_br, double beta, const std::vector<double>& zeta,
                                 const std::vector<double>& bad, double c1, double c2, double c3, double omega,
                                 double alpha = kAlpha) {
  double t = alpha * c_br * beta * c1 * c2 * c3 * omega;
  for (double z : zeta) t *= z;
  for (double b : bad) t *= b;
  return t;
}

inline ConstantBreakdown assemble(const Surface& s, const AssemblyConfig& cfg = {}, std::string surface_id = {}) {
  if (!s.is_qr() && !s.is_unit()) {
    throw std::invalid_argument("the constant is only assembled for the QR and unit families");
  }
  const BrauerData br = brauer_data(s);
  if (!br.solvable) throw NotLocallySolvable("surface is not everywhere locally solvable");
  if (br.c_br == 0) throw HasseFailure("Brauer-Manin obstruction: C_Br = 0, theta = 0");

  ConstantBreakdown out;
  out.surface_id = std::move(surface_id);
  out.coeffs = s.coeffs();
  out.c_br = br.c_br;
  out.beta = br.beta;
  out.fields = cubic_fields(s);

  // Distinct fields only; the unit family repeats one field three times.
  std::vector<std::uint64_t> distinct;
  for (auto m : out.fields) {
    if (std::find(distinct.begin(), distinct.end(), m) == distinct.end()) distinct.push_back(m);
  }
  std::vector<ResidueEstimate> est(distinct.size());
  if (cfg.threads > 1) {
    std::vector<std::future<ResidueEstimate>> jobs;
    for (auto m : distinct) jobs.push_back(std::async(std::launch::async, [m, &cfg] { return residue(m, cfg.zeta_bound); }));
    for (std::size_t i = 0; i < jobs.size(); ++i) est[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < distinct.size(); ++i) est[i] = residue(distinct[i], cfg.zeta_bound);
  }
  for (auto m : out.fields) {
    const auto it = std::find(distinct.begin(), distinct.end(), m);
    out.zeta_residues.push_back(est[static_cast<std::size_t>(it - distinct.begin())]);
  }

  for (auto p : bad_primes(s)) out.bad_factors.push_back(bad_prime_factor(s, p));
  out.euler = compute_euler_products(s, cfg.euler_bound, cfg.threads);
  out.omega_real = real_density(s, cfg.quad_tol);

  std::vector<double> zeta, bad;
  double rel = 0;
  for (const auto& z : out.zeta_residues) {
    zeta.push_back(z.value);
    rel += std::fabs(z.value - z.raw) / z.value;
  }
  for (const auto& f : out.bad_factors) bad.push_back(to_double(f.value));
  rel += out.euler.c1.tail_estimate + out.euler.c2.tail_estimate + out.euler.c3.tail_estimate;
  rel += out.omega_real.abs_error_estimate / out.omega_real.value;
  out.theta = theta_from_factors(to_double(out.c_br), out.beta, zeta, bad, out.euler.c1.value, out.euler.c2.value,
                                 out.euler.c3.value, out.omega_real.value, out.alpha);
  out.theta_rel_error = rel;
  return out;
}

inline ComparisonReport compare(std::int64_t H, std::uint64_t n, const ConstantBreakdown& b) {
  if (!(b.theta > 0)) throw std::invalid_argument("compare: theta must be positive");
  return {H, n, b.theta, static_cast<double>(n) / (b.theta * static_cast<double>(H))};
}

/// Runs the enumeration at H (lines excluded for the unit family) and compares.
inline ComparisonReport compare(const Surface& s, std::int64_t H, const ConstantBreakdown& b, unsigned threads = 1) {
  EnumerationOptions opt;
  opt.exclude_lines = s.is_unit();
  opt.threads = threads;
  return compare(H, count_sorted_sums(s, H, {}, opt).final_count(), b);
}

}  // namespace manin
