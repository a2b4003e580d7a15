#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "manin/manin.hpp"

namespace manin::cli {

enum ExitCode { kOk = 0, kUsage = 1, kBudget = 2, kHasse = 3 };

using Row = std::vector<std::pair<std::string, std::string>>;

inline std::string fixed6(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

inline std::string coeff_text(const std::array<std::int64_t, 4>& a) {
  return std::to_string(a[0]) + " " + std::to_string(a[1]) + " " + std::to_string(a[2]) + " " + std::to_string(a[3]);
}

inline std::array<std::int64_t, 4> parse_coeffs(const std::string& text) {
  std::array<std::int64_t, 4> a{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 4) throw std::invalid_argument("--coeffs needs exactly four integers");
    std::size_t used = 0;
    a[i++] = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad coefficient '" + item + "'");
  }
  if (i != 4) throw std::invalid_argument("--coeffs needs exactly four integers");
  return a;
}

inline Surface surface_from(const std::string& id, const std::string& coeffs) {
  if (!id.empty() && !coeffs.empty()) throw std::invalid_argument("give either --surface or --coeffs, not both");
  if (!id.empty()) return named_surface(id);
  if (coeffs.empty()) throw std::invalid_argument("a surface is required (--surface or --coeffs)");
  return Surface::general(parse_coeffs(coeffs));
}

/// Factor columns in table order. Unit surfaces fill the q columns from the
/// single field and the prime 2; absent cells are empty.
inline Row breakdown_row(const ConstantBreakdown& b, const std::optional<ComparisonReport>& cmp) {
  Row row;
  row.emplace_back("surface", b.surface_id);
  row.emplace_back("coeffs", coeff_text(b.coeffs));
  if (cmp) {
    row.emplace_back("H", std::to_string(cmp->H));
    row.emplace_back("n", std::to_string(cmp->n));
  }
  row.emplace_back("C_Br", rational_string(b.c_br));
  row.emplace_back("H1_Pic", std::to_string(b.beta));
  const bool unit = b.fields.size() == 3 && b.fields[0] == b.fields[1];
  const char* zeta_labels[] = {"zeta_q", "zeta_r", "zeta_qr"};
  for (std::size_t i = 0; i < (unit ? 1U : 3U); ++i) row.emplace_back(zeta_labels[i], fixed6(b.zeta_residues[i].value));
  std::vector<std::uint64_t> primes{3};
  if (unit) {
    primes.push_back(b.fields[0] == 2 ? 2 : 0);
  } else {
    primes.push_back(b.fields[0]);
    primes.push_back(b.fields[1]);
  }
  const char* local_labels[] = {"local_3", "local_q", "local_r"};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto f = primes[i] ? b.bad_factor(primes[i]) : std::nullopt;
    row.emplace_back(local_labels[i], f ? fixed6(to_double(*f)) : std::string());
  }
  row.emplace_back("C1", fixed6(b.euler.c1.value));
  row.emplace_back("C2", fixed6(b.euler.c2.value));
  row.emplace_back("C3", fixed6(b.euler.c3.value));
  row.emplace_back("omega_R", fixed6(b.omega_real.value));
  row.emplace_back("theta", fixed6(b.theta));
  if (cmp) row.emplace_back("ratio", fixed6(cmp->ratio));
  row.emplace_back("theta_rel_error", fixed6(b.theta_rel_error));
  return row;
}

inline void print_csv_row(const Row& row, std::ostream& out) {
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].first;
  out << '\n';
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].second;
  out << '\n';
}

inline void print_json_row(const Row& row, std::ostream& out) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : row) j[k] = v;
  out << j.dump(2) << '\n';
}

inline void print_vertical(const Row& row, std::ostream& out) {
  out << "row,value\n";
  for (const auto& [k, v] : row) out << k << ',' << v << '\n';
}

struct BoundOptions {
  std::uint64_t euler_bound = 10'000'000;
  std::uint64_t zeta_bound = 100'000'000;
  double quad_tol = 1e-6;
  unsigned threads = 1;

  void add_to(CLI::App* app) {
    app->add_option("--euler-bound", euler_bound, "Prime bound for the Euler products")->check(CLI::Range(1000ULL, 4'000'000'000ULL));
    app->add_option("--zeta-bound", zeta_bound, "Ideal count bound for the zeta residues")->check(CLI::Range(1'000'000ULL, 4'000'000'000ULL));
    app->add_option("--quad-tol", quad_tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    app->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1U, 256U));
  }

  AssemblyConfig config() const { return {euler_bound, zeta_bound, quad_tol, threads}; }
};

/// Runs one invocation. Arguments exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational points and leading constants for diagonal cubic surfaces", "manin"};
  app.require_subcommand(1);

  // count
  auto* count = app.add_subcommand("count", "Count primitive points of height <= H");
  std::string count_coeffs, count_surface, count_method = "heap", count_format = "csv", plot_file;
  std::int64_t count_height = 0;
  std::vector<std::int64_t> checkpoints;
  bool exclude_lines = false;
  unsigned count_threads = 1;
  count->add_option("--coeffs", count_coeffs, "a0,a1,a2,a3");
  count->add_option("--surface", count_surface, "Named surface S1..S6");
  count->add_option("--height", count_height, "Height bound")->required()->check(CLI::PositiveNumber);
  count->add_option("--checkpoints", checkpoints, "Heights to report")->delimiter(',');
  count->add_flag("--exclude-lines", exclude_lines, "Drop points on the lines x_i = -x_j");
  count->add_option("--method", count_method, "heap or naive")->check(CLI::IsMember({"heap", "naive"}));
  count->add_option("--threads", count_threads, "Worker threads")->check(CLI::Range(1U, 256U));
  count->add_option("--format", count_format, "csv, json or plot")->check(CLI::IsMember({"csv", "json", "plot"}));
  count->add_option("--plot-file", plot_file, "Also write plot columns to this file");

  // constant
  auto* constant = app.add_subcommand("constant", "Assemble the leading constant");
  std::string family, constant_id;
  std::int64_t q = 0, r = 0, k = 0;
  bool constant_json = false;
  BoundOptions constant_bounds;
  constant->add_option("--family", family, "qr or unit")->check(CLI::IsMember({"qr", "unit"}));
  constant->add_option("--surface-id", constant_id, "Named surface S1..S6");
  constant->add_option("--q", q, "Prime q");
  constant->add_option("--r", r, "Prime r");
  constant->add_option("--k", k, "Unit family coefficient, 2 or 3");
  constant->add_flag("--json", constant_json, "JSON output");
  constant_bounds.add_to(constant);

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare n(H) with theta H");
  std::string compare_id;
  std::int64_t compare_height = 0;
  bool compare_json = false;
  BoundOptions compare_bounds;
  cmp->add_option("--surface-id", compare_id, "Named surface S1..S6")->required();
  cmp->add_option("--height", compare_height, "Height bound")->required()->check(CLI::PositiveNumber);
  cmp->add_flag("--json", compare_json, "JSON output");
  compare_bounds.add_to(cmp);

  // brauer
  auto* brauer = app.add_subcommand("brauer", "Local solvability and C_Br for the QR family");
  std::int64_t bq = 0, br = 0;
  brauer->add_option("--q", bq, "Prime q")->required();
  brauer->add_option("--r", br, "Prime r")->required();

  // zeta-residue
  auto* zeta = app.add_subcommand("zeta-residue", "Residue at s = 1 of the Dedekind zeta of Q(m^(1/3))");
  std::uint64_t zm = 0, zx = 100'000'000;
  unsigned zeta_threads = 1;
  zeta->add_option("--m", zm, "Radicand")->required()->check(CLI::Range(2ULL, 1ULL << 40));
  zeta->add_option("--bound", zx, "Ideal count bound X")->check(CLI::Range(1'000'000ULL, 4'000'000'000ULL));
  zeta->add_option("--threads", zeta_threads, "Worker threads")->check(CLI::Range(1U, 256U));

  // real-density
  auto* real = app.add_subcommand("real-density", "Real density of the surface");
  std::string real_coeffs, real_surface;
  double real_tol = 1e-8;
  real->add_option("--coeffs", real_coeffs, "a0,a1,a2,a3");
  real->add_option("--surface", real_surface, "Named surface S1..S6");
  real->add_option("--tol", real_tol, "Quadrature tolerance")->check(CLI::PositiveNumber);

  // oracle padic
  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->require_subcommand(1);
  auto* padic = oracle->add_subcommand("padic", "Solutions modulo p^r");
  std::string padic_coeffs, padic_surface;
  std::uint64_t pp = 0;
  unsigned pr = 1;
  padic->add_option("--coeffs", padic_coeffs, "a0,a1,a2,a3");
  padic->add_option("--surface", padic_surface, "Named surface S1..S6");
  padic->add_option("--p", pp, "Prime p")->required();
  padic->add_option("--r", pr, "Exponent r")->required()->check(CLI::Range(1U, 64U));

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "Full factor table for a named surface");
  std::string repro_id;
  std::int64_t repro_height = 0;
  std::string repro_format = "csv";
  BoundOptions repro_bounds;
  reproduce->add_option("--surface", repro_id, "Named surface S1..S6")->required();
  reproduce->add_option("--height", repro_height, "Height bound (default: the table height)")->check(CLI::PositiveNumber);
  reproduce->add_option("--format", repro_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  repro_bounds.add_to(reproduce);

  std::vector<const char*> argv{"manin"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count) {
      const Surface s = surface_from(count_surface, count_coeffs);
      EnumerationOptions opt;
      opt.exclude_lines = exclude_lines;
      opt.threads = count_threads;
      const CountSeries series = count_method == "naive" ? count_naive(s, count_height, opt, checkpoints)
                                                          : count_sorted_sums(s, count_height, checkpoints, opt);
      if (count_format == "plot") {
        out << emit_plot_data(series);
      } else if (count_format == "json") {
        nlohmann::ordered_json j;
        j["coeffs"] = s.coeffs();
        j["exclude_lines"] = exclude_lines;
        j["method"] = count_method;
        j["rows"] = nlohmann::json::array();
        for (const auto& c : series.checkpoints) j["rows"].push_back({{"H", c.height}, {"count", c.count}});
        out << j.dump(2) << '\n';
      } else {
        for (const auto& c : series.checkpoints) out << c.height << ',' << c.count << '\n';
      }
      if (!plot_file.empty()) {
        std::ofstream f(plot_file);
        if (!f) throw std::invalid_argument("cannot write " + plot_file);
        f << emit_plot_data(series);
      }
      return kOk;
    }

    if (*constant) {
      Surface s = Surface::unit(2);
      std::string id = constant_id;
      if (!constant_id.empty()) {
        s = named_surface(constant_id);
      } else if (family == "qr") {
        s = Surface::qr(q, r);
        id = "qr(" + std::to_string(q) + "," + std::to_string(r) + ")";
      } else if (family == "unit") {
        s = Surface::unit(k);
        id = "unit(" + std::to_string(k) + ")";
      } else {
        throw std::invalid_argument("give --surface-id or --family qr|unit");
      }
      const auto b = assemble(s, constant_bounds.config(), id);
      const Row row = breakdown_row(b, std::nullopt);
      constant_json ? print_json_row(row, out) : print_csv_row(row, out);
      return kOk;
    }

    if (*cmp) {
      const Surface s = named_surface(compare_id);
      const auto b = assemble(s, compare_bounds.config(), compare_id);
      const auto c = compare(s, compare_height, b, compare_bounds.threads);
      const Row row = breakdown_row(b, c);
      compare_json ? print_json_row(row, out) : print_csv_row(row, out);
      return kOk;
    }

    if (*brauer) {
      const auto d = brauer_data(bq, br);
      out << "solvable=" << (d.solvable ? "true" : "false") << " classes=(" << d.q_class << ',' << d.r_class
          << ") C_Br=" << rational_string(d.c_br) << '\n';
      return kOk;
    }

    if (*zeta) {
      const auto e = residue(zm, zx, zeta_threads);
      out << "m=" << e.m << " X=" << e.X << " raw=" << fixed6(e.raw) << " raw_half=" << fixed6(e.raw_half)
          << " value=" << fixed6(e.value) << '\n';
      return kOk;
    }

    if (*real) {
      const auto d = real_density(surface_from(real_surface, real_coeffs), real_tol);
      out << "omega_R=" << fixed6(d.value) << " abs_error=" << std::scientific << std::setprecision(2)
          << d.abs_error_estimate << " converged=" << (d.converged ? "true" : "false") << '\n';
      return kOk;
    }

    if (*padic) {
      const Surface s = surface_from(padic_surface, padic_coeffs);
      const auto c = count_mod_pr(s, pp, pr);
      const Rational all_density(BigInt(c.N_all), BigInt(detail::ipow(pp, 3 * pr)));
      const Rational star = c.star_density();
      out << "p=" << pp << " r=" << pr << " N_all=" << c.N_all << " N_star=" << c.N_star
          << " N_all/p^3r=" << rational_string(all_density) << " (" << fixed6(to_double(all_density)) << ")"
          << " N_star/p^3r=" << rational_string(star) << " (" << fixed6(to_double(star)) << ")\n";
      return kOk;
    }

    if (*reproduce) {
      const Surface s = named_surface(repro_id);
      const auto b = assemble(s, repro_bounds.config(), repro_id);
      std::int64_t H = repro_height;
      if (H == 0) {
        for (const auto& [id, h] : std::vector<std::pair<std::string, std::int64_t>>{
                 {"S1", 29967}, {"S2", 29996}, {"S3", 29982}, {"S4", 19962}, {"S5", 99997}, {"S6", 99999}}) {
          if (id == repro_id) H = h;
        }
      }
      const auto c = compare(s, H, b, repro_bounds.threads);
      const Row row = breakdown_row(b, c);
      repro_format == "json" ? print_json_row(row, out) : print_vertical(row, out);
      return kOk;
    }
  } catch (const HasseFailure& e) {
    err << "error: " << e.what() << '\n';
    return kHasse;
  } catch (const NotLocallySolvable& e) {
    err << "error: " << e.what() << '\n';
    return kHasse;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  }
  return kUsage;
}

}  // namespace manin::cli
