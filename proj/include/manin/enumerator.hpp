#pragma once

// Counting primitive integer points of bounded sup-norm height on diagonal
// cubic surfaces, identified up to a global sign.
//
// The fast method splits the form into two binary forms,
//   a_i x_i^3 + a_j x_j^3 = -(a_k x_k^3 + a_l x_l^3),
// streams both sides in increasing order through a heap with one frontier entry
// per row, and merges the two streams looking for equal values. Only positive
// common values are streamed: a solution and its negative have opposite signs
// there, so each sign class is met exactly once. Solutions where both sides
// vanish are collected separately.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "manin/number_theory.hpp"
#include "manin/surface.hpp"

namespace manin {

struct Solution {
  std::array<std::int64_t, 4> x{};

  std::int64_t height() const {
    std::int64_t h = 0;
    for (auto v : x) h = std::max(h, v < 0 ? -v : v);
    return h;
  }

  int nonzero_count() const {
    return static_cast<int>(std::count_if(x.begin(), x.end(), [](std::int64_t v) { return v != 0; }));
  }

  bool is_primitive() const {
    std::int64_t g = 0;
    for (auto v : x) g = gcd_abs(g, v);
    return g == 1;
  }

  /// First nonzero coordinate positive.
  bool is_canonical() const {
    for (auto v : x) {
      if (v != 0) return v > 0;
    }
    return false;
  }

  Solution canonical() const {
    if (is_canonical()) return *this;
    return {{-x[0], -x[1], -x[2], -x[3]}};
  }
};

struct Checkpoint {
  std::int64_t height;
  std::uint64_t count;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct CountSeries {
  std::vector<Checkpoint> checkpoints;

  std::uint64_t final_count() const { return checkpoints.empty() ? 0 : checkpoints.back().count; }

  friend bool operator==(const CountSeries&, const CountSeries&) = default;
};

struct EnumerationOptions {
  /// Drop solutions with exactly two nonzero coordinates.
  bool exclude_lines = false;
  /// Only count quadruples with gcd 1.
  bool primitive_only = true;
  unsigned threads = 1;
  /// Hard cap on the number of pairs crossed at a single collision value.
  std::uint64_t max_collision_pairs = 1'000'000;
};

namespace detail {

inline std::vector<std::int64_t> normalize_checkpoints(std::int64_t H, std::vector<std::int64_t> cps) {
  if (H < 1) throw std::invalid_argument("height must be >= 1");
  if (cps.empty()) cps.push_back(H);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  if (cps.front() < 1 || cps.back() > H) throw std::invalid_argument("checkpoints must lie in [1, H]");
  return cps;
}

inline CountSeries series_from_histogram(const std::vector<std::uint64_t>& by_height,
                                         const std::vector<std::int64_t>& cps) {
  CountSeries out;
  std::uint64_t running = 0;
  std::size_t h = 0;
  for (std::int64_t c : cps) {
    while (static_cast<std::int64_t>(h) <= c) running += by_height[h++];
    out.checkpoints.push_back({c, running});
  }
  return out;
}

inline void check_overflow(const Surface& s, std::int64_t H) {
  if (H >= (std::int64_t{1} << 30)) throw std::overflow_error("height too large");
  const long double h3 = static_cast<long double>(H) * H * H;
  long double total = 0;
  for (auto a : s.coeffs()) total += std::fabs(static_cast<long double>(a)) * h3;
  if (total >= std::ldexp(1.0L, 126)) {
    throw std::overflow_error("sum |a_i| H^3 exceeds the 127-bit range");
  }
}

inline bool accept(const Solution& sol, const EnumerationOptions& opt) {
  if (opt.primitive_only && !sol.is_primitive()) return false;
  if (opt.exclude_lines && sol.nonzero_count() == 2) return false;
  return true;
}

inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// P u^3 + Q v^3 with P, Q > 0, u and v in [-H, H]; u, v are the original
/// coordinates x[idx] multiplied by a sign.
template <class V>
struct BinaryForm {
  int idx_u, idx_v;
  int sign_u, sign_v;
  i128 P, Q;
  std::int64_t H;
  std::vector<V> pu3;  // indexed by u + H
  std::vector<V> qv3;  // indexed by v + H

  BinaryForm(int iu, int iv, std::int64_t a_u, std::int64_t a_v, std::int64_t height)
      : idx_u(iu), idx_v(iv), sign_u(a_u > 0 ? 1 : -1), sign_v(a_v > 0 ? 1 : -1),
        P(a_u > 0 ? a_u : -a_u), Q(a_v > 0 ? a_v : -a_v), H(height) {
    pu3.resize(static_cast<std::size_t>(2 * H + 1));
    qv3.resize(static_cast<std::size_t>(2 * H + 1));
    for (std::int64_t t = -H; t <= H; ++t) {
      const i128 c = static_cast<i128>(t) * t * t;
      pu3[static_cast<std::size_t>(t + H)] = static_cast<V>(P * c);
      qv3[static_cast<std::size_t>(t + H)] = static_cast<V>(Q * c);
    }
  }

  V value(std::int64_t u, std::int64_t v) const {
    return pu3[static_cast<std::size_t>(u + H)] + qv3[static_cast<std::size_t>(v + H)];
  }

  /// Smallest v in [-H, H] with P u^3 + Q v^3 > lo, or H + 1 if none.
  std::int64_t first_above(std::int64_t u, i128 lo) const {
    const i128 t = lo - P * static_cast<i128>(u) * u * u;
    // Q v^3 > t  <=>  v^3 >= floor(t / Q) + 1
    const i128 need = floor_div(t, Q) + 1;
    if (need > static_cast<i128>(H) * H * H) return H + 1;
    if (need <= -static_cast<i128>(H) * H * H) return -H;
    const i128 v = -icbrt_floor(-need);  // ceil(cbrt(need))
    return static_cast<std::int64_t>(std::max<i128>(v, -H));
  }

  void write(std::array<std::int64_t, 4>& x, std::int64_t u, std::int64_t v) const {
    x[static_cast<std::size_t>(idx_u)] = sign_u * u;
    x[static_cast<std::size_t>(idx_v)] = sign_v * v;
  }

  /// Number of (u, v) with lo < value <= hi, O(H) via cube roots.
  std::uint64_t count_in(i128 lo, i128 hi) const {
    std::uint64_t n = 0;
    for (std::int64_t u = -H; u <= H; ++u) {
      const std::int64_t a = first_above(u, lo);
      const std::int64_t b = first_above(u, hi);
      if (b > a) n += static_cast<std::uint64_t>(b - a);
    }
    return n;
  }

  /// All (u, v) with value exactly zero.
  std::vector<std::pair<std::int64_t, std::int64_t>> zeros() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> z;
    for (std::int64_t u = -H; u <= H; ++u) {
      const i128 t = -P * static_cast<i128>(u) * u * u;
      if (t % Q != 0) continue;
      i128 v;
      if (exact_cbrt(t / Q, v) && v >= -H && v <= H) z.emplace_back(u, static_cast<std::int64_t>(v));
    }
    return z;
  }
};

/// Streams the values of a binary form lying in (lo, hi] in nondecreasing order.
template <class V>
class SortedSumStream {
 public:
  struct Entry {
    V value;
    std::int32_t u;
    std::int32_t v;
  };

  SortedSumStream(const BinaryForm<V>& form, i128 lo, i128 hi) : form_(form), hi_(static_cast<V>(hi)) {
    heap_.reserve(static_cast<std::size_t>(2 * form.H + 1));
    for (std::int64_t u = -form.H; u <= form.H; ++u) {
      const std::int64_t v = form.first_above(u, lo);
      if (v > form.H) continue;
      const V val = form.value(u, v);
      if (val > hi_) continue;
      heap_.push_back({val, static_cast<std::int32_t>(u), static_cast<std::int32_t>(v)});
    }
    build();
  }

  bool empty() const { return heap_.empty(); }
  const Entry& top() const { return heap_.front(); }

  /// Replaces the top entry by its row successor, dropping the row when exhausted.
  void advance() {
    Entry e = heap_.front();
    if (e.v < form_.H) {
      ++e.v;
      e.value = form_.value(e.u, e.v);
      if (e.value <= hi_) {
        sift(0, e);
        return;
      }
    }
    Entry last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) sift(0, last);
  }

 private:
  // Bottom-up sift: walk the hole to a leaf along smaller children, then move
  // e back up. New row values usually belong near the leaves.
  void sift(std::size_t hole, const Entry& e) {
    const std::size_t n = heap_.size();
    Entry* h = heap_.data();
    const std::size_t top = hole;
    std::size_t child = 2 * hole + 1;
    while (child + 1 < n) {
      child += static_cast<std::size_t>(h[child + 1].value < h[child].value);
      h[hole] = h[child];
      hole = child;
      child = 2 * hole + 1;
    }
    if (child < n) {
      h[hole] = h[child];
      hole = child;
    }
    while (hole > top) {
      const std::size_t parent = (hole - 1) / 2;
      if (!(e.value < h[parent].value)) break;
      h[hole] = h[parent];
      hole = parent;
    }
    h[hole] = e;
  }

  void build() {
    for (std::size_t i = heap_.size() / 2; i-- > 0;) {
      const Entry e = heap_[i];
      sift(i, e);
    }
  }

  const BinaryForm<V>& form_;
  V hi_;
  std::vector<Entry> heap_;
};

struct Pairing {
  int i, j, k, l;
};

inline constexpr std::array<Pairing, 3> kPairings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};

template <class V>
struct SplitForms {
  BinaryForm<V> left;
  BinaryForm<V> right;
  i128 max_value;  // common positive range is (0, max_value]
};

template <class V>
SplitForms<V> make_split(const Surface& s, std::int64_t H, const Pairing& pr) {
  const auto& a = s.coeffs();
  BinaryForm<V> left(pr.i, pr.j, a[pr.i], a[pr.j], H);
  BinaryForm<V> right(pr.k, pr.l, -a[pr.k], -a[pr.l], H);
  const i128 h3 = static_cast<i128>(H) * H * H;
  const i128 m = std::min(left.P + left.Q, right.P + right.Q) * h3;
  return {std::move(left), std::move(right), m};
}

/// Chooses the split that streams the fewest values.
inline Pairing choose_pairing(const Surface& s, std::int64_t H) {
  const auto& a = s.coeffs();
  Pairing best = kPairings[0];
  std::uint64_t best_work = std::numeric_limits<std::uint64_t>::max();
  const i128 h3 = static_cast<i128>(H) * H * H;
  for (const auto& pr : kPairings) {
    auto abs64 = [](std::int64_t v) { return static_cast<i128>(v < 0 ? -v : v); };
    const i128 m = std::min(abs64(a[pr.i]) + abs64(a[pr.j]), abs64(a[pr.k]) + abs64(a[pr.l])) * h3;
    BinaryForm<i128> left(pr.i, pr.j, a[pr.i], a[pr.j], H);
    BinaryForm<i128> right(pr.k, pr.l, -a[pr.k], -a[pr.l], H);
    const std::uint64_t work = left.count_in(0, m) + right.count_in(0, m);
    if (work < best_work) {
      best_work = work;
      best = pr;
    }
  }
  return best;
}

template <class V, class Sink>
void merge_interval(const SplitForms<V>& forms, i128 lo, i128 hi, const EnumerationOptions& opt, Sink&& sink) {
  SortedSumStream<V> L(forms.left, lo, hi);
  SortedSumStream<V> R(forms.right, lo, hi);
  std::vector<std::pair<std::int32_t, std::int32_t>> lblock, rblock;
  while (!L.empty() && !R.empty()) {
    const V r = R.top().value;
    while (L.top().value < r) {
      L.advance();
      if (L.empty()) return;
    }
    const V l = L.top().value;
    while (R.top().value < l) {
      R.advance();
      if (R.empty()) return;
    }
    if (R.top().value != l) continue;

    lblock.clear();
    rblock.clear();
    while (!L.empty() && L.top().value == l) {
      lblock.emplace_back(L.top().u, L.top().v);
      L.advance();
    }
    while (!R.empty() && R.top().value == l) {
      rblock.emplace_back(R.top().u, R.top().v);
      R.advance();
    }
    if (static_cast<std::uint64_t>(lblock.size()) * rblock.size() > opt.max_collision_pairs) {
      throw std::runtime_error("collision block exceeds the pair cap");
    }
    for (const auto& [lu, lv] : lblock) {
      for (const auto& [ru, rv] : rblock) {
        Solution sol;
        forms.left.write(sol.x, lu, lv);
        forms.right.write(sol.x, ru, rv);
        if (accept(sol, opt)) sink(sol);
      }
    }
  }
}

template <class V, class Sink>
void zero_value_solutions(const SplitForms<V>& forms, const EnumerationOptions& opt, Sink&& sink) {
  const auto zl = forms.left.zeros();
  const auto zr = forms.right.zeros();
  for (const auto& [lu, lv] : zl) {
    for (const auto& [ru, rv] : zr) {
      Solution sol;
      forms.left.write(sol.x, lu, lv);
      forms.right.write(sol.x, ru, rv);
      if (sol.is_canonical() && accept(sol, opt)) sink(sol);
    }
  }
}

/// Value-line partition (0, M] into chunks with roughly equal pair counts.
inline std::vector<i128> chunk_boundaries(i128 max_value, unsigned chunks) {
  std::vector<i128> b{0};
  for (unsigned c = 1; c < chunks; ++c) {
    const long double t = std::pow(static_cast<long double>(c) / chunks, 1.5L);
    const auto v = static_cast<i128>(t * static_cast<long double>(max_value));
    if (v > b.back() && v < max_value) b.push_back(v);
  }
  b.push_back(max_value);
  return b;
}

template <class V>
CountSeries count_sorted_sums_impl(const Surface& s, std::int64_t H, const std::vector<std::int64_t>& cps,
                                   const EnumerationOptions& opt) {
  const Pairing pr = choose_pairing(s, H);
  const SplitForms<V> forms = make_split<V>(s, H, pr);
  const unsigned threads = std::max(1U, opt.threads);

  std::vector<std::uint64_t> by_height(static_cast<std::size_t>(H + 1), 0);
  zero_value_solutions(forms, opt, [&](const Solution& sol) { ++by_height[static_cast<std::size_t>(sol.height())]; });

  const auto bounds = chunk_boundaries(forms.max_value, threads == 1 ? 1 : 16 * threads);
  const std::size_t nchunks = bounds.size() - 1;
  std::vector<std::vector<std::uint64_t>> local(threads, std::vector<std::uint64_t>(static_cast<std::size_t>(H + 1), 0));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned t) {
    try {
      for (std::size_t c = next++; c < nchunks; c = next++) {
        merge_interval(forms, bounds[c], bounds[c + 1], opt,
                       [&](const Solution& sol) { ++local[t][static_cast<std::size_t>(sol.height())]; });
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& hist : local) {
    for (std::size_t h = 0; h < hist.size(); ++h) by_height[h] += hist[h];
  }
  return series_from_histogram(by_height, cps);
}

inline bool fits_int64(const Surface& s, std::int64_t H) {
  const long double h3 = static_cast<long double>(H) * H * H;
  for (const auto& pr : kPairings) {
    const auto& a = s.coeffs();
    for (auto [x, y] : {std::pair{a[pr.i], a[pr.j]}, std::pair{a[pr.k], a[pr.l]}}) {
      const long double m = (std::fabs(static_cast<long double>(x)) + std::fabs(static_cast<long double>(y))) * h3;
      if (m >= std::ldexp(1.0L, 62)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Exhaustive O(H^3) count: loops over three coordinates and solves for the
/// fourth by an exact cube root. Intended as a reference for H <= 500.
inline CountSeries count_naive(const Surface& s, std::int64_t H, const EnumerationOptions& opt = {},
                               std::vector<std::int64_t> checkpoints = {}) {
  const auto cps = detail::normalize_checkpoints(H, std::move(checkpoints));
  detail::check_overflow(s, H);
  const auto& a = s.coeffs();
  // a3 * x3^3 is monotone in x3, so a sorted table gives the exact inverse.
  std::vector<std::pair<i128, std::int64_t>> last;
  for (std::int64_t t = -H; t <= H; ++t) last.emplace_back(static_cast<i128>(a[3]) * t * t * t, t);
  std::sort(last.begin(), last.end());

  std::vector<std::uint64_t> by_height(static_cast<std::size_t>(H + 1), 0);
  for (std::int64_t x0 = -H; x0 <= H; ++x0) {
    const i128 s0 = static_cast<i128>(a[0]) * x0 * x0 * x0;
    for (std::int64_t x1 = -H; x1 <= H; ++x1) {
      const i128 s1 = s0 + static_cast<i128>(a[1]) * x1 * x1 * x1;
      for (std::int64_t x2 = -H; x2 <= H; ++x2) {
        const i128 target = -(s1 + static_cast<i128>(a[2]) * x2 * x2 * x2);
        auto it = std::lower_bound(last.begin(), last.end(), std::pair<i128, std::int64_t>{target, -H - 1});
        if (it == last.end() || it->first != target) continue;
        Solution sol{{x0, x1, x2, it->second}};
        if (!sol.is_canonical() || !detail::accept(sol, opt)) continue;
        ++by_height[static_cast<std::size_t>(sol.height())];
      }
    }
  }
  return detail::series_from_histogram(by_height, cps);
}

/// Heap-based sorted-sums count; every checkpoint comes out of a single pass.
inline CountSeries count_sorted_sums(const Surface& s, std::int64_t H, std::vector<std::int64_t> checkpoints = {},
                                     const EnumerationOptions& opt = {}) {
  const auto cps = detail::normalize_checkpoints(H, std::move(checkpoints));
  detail::check_overflow(s, H);
  if (detail::fits_int64(s, H)) return detail::count_sorted_sums_impl<std::int64_t>(s, H, cps, opt);
  return detail::count_sorted_sums_impl<i128>(s, H, cps, opt);
}

/// Calls visit(solution) for every counted canonical solution with height <= H
/// (single-threaded; order is by increasing common value).
template <class Visitor>
void enumerate_solutions(const Surface& s, std::int64_t H, const EnumerationOptions& opt, Visitor&& visit) {
  detail::check_overflow(s, H);
  auto run = [&](auto tag) {
    using V = decltype(tag);
    const auto forms = detail::make_split<V>(s, H, detail::choose_pairing(s, H));
    detail::zero_value_solutions(forms, opt, [&](const Solution& sol) { visit(sol); });
    detail::merge_interval(forms, 0, forms.max_value, opt, [&](const Solution& sol) { visit(sol.canonical()); });
  };
  if (detail::fits_int64(s, H)) {
    run(std::int64_t{});
  } else {
    run(i128{});
  }
}

/// Whitespace-separated "H n n/H" rows for plotting.
inline std::string emit_plot_data(const CountSeries& series) {
  if (series.checkpoints.empty()) throw std::invalid_argument("emit_plot_data: empty series");
  std::ostringstream os;
  for (const auto& c : series.checkpoints) {
    os << c.height << ' ' << c.count << ' ' << static_cast<double>(c.count) / static_cast<double>(c.height) << '\n';
  }
  return os.str();
}

}  // namespace manin
