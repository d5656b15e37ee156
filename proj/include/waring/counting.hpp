#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "waring/numeric.hpp"
#include "waring/types.hpp"

namespace waring::counting {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integers m >= 1 with |m^n - center| <= H, as the inclusive range [lo, hi]
/// (empty when lo > hi). Endpoint membership is decided by exact comparison of
/// m^n against the dyadic rationals center +- H; the floating-point root only
/// seeds the search.
struct WindowRange {
  i64 lo = 1;
  i64 hi = 0;
  i64 size() const { return hi >= lo ? hi - lo + 1 : 0; }
};

inline WindowRange power_window_range(int n, double center, double H) {
  if (n < 2) throw std::invalid_argument("power_window: degree must be >= 2");
  if (!(H > 0.0)) throw std::invalid_argument("power_window: need H > 0");
  mpq_class hi_bound(center + H);
  mpq_class lo_bound(center - H);
  if (hi_bound < 1) return WindowRange{};
  auto nth_pow = [n](i64 m) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(n));
    return p;
  };
  auto cmp_pow = [&](i64 m, const mpq_class& bound) {  // sign of m^n - bound
    return -cmp(bound, mpq_class(nth_pow(m)));
  };
  // largest m with m^n <= center + H
  i64 hi = static_cast<i64>(std::floor(std::pow(std::max(center + H, 1.0), 1.0 / n)));
  hi = std::max<i64>(hi, 1);
  while (cmp_pow(hi, hi_bound) > 0) --hi;
  while (hi >= 1 && cmp_pow(hi + 1, hi_bound) <= 0) ++hi;
  if (hi < 1) return WindowRange{};
  // smallest m >= 1 with m^n >= center - H
  i64 lo;
  if (lo_bound <= 1) {
    lo = 1;
  } else {
    lo = static_cast<i64>(std::ceil(std::pow(mpq_class(lo_bound).get_d(), 1.0 / n)));
    lo = std::max<i64>(lo, 1);
    while (lo > 1 && cmp_pow(lo - 1, lo_bound) >= 0) --lo;
    while (cmp_pow(lo, lo_bound) < 0) ++lo;
  }
  if (lo > hi) return WindowRange{};
  return WindowRange{lo, hi};
}

inline std::vector<i64> power_window(int n, double center, double H) {
  auto range = power_window_range(n, center, H);
  std::vector<i64> out;
  out.reserve(static_cast<std::size_t>(range.size()));
  for (i64 m = range.lo; m <= range.hi; ++m) out.push_back(m);
  return out;
}

namespace detail {

/// Multiset of exact sum values: dense slab over a value range when that fits
/// the memory budget, hash map otherwise.
struct SumCounter {
  bool dense = false;
  u128 base = 0;
  std::vector<u64> slots;
  std::unordered_map<u128, u64, U128Hash> map;
  u128 min_key = 0, max_key = 0;
  std::size_t nnz = 0;

  template <typename F>
  void for_each(F&& f) const {
    if (dense) {
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i] != 0) f(base + i, slots[i]);
    } else {
      for (const auto& [k, v] : map) f(k, v);
    }
  }

  u64 at(u128 key) const {
    if (dense) {
      if (key < base || key >= base + slots.size()) return 0;
      return slots[static_cast<std::size_t>(key - base)];
    }
    auto it = map.find(key);
    return it == map.end() ? 0 : it->second;
  }
};

inline SumCounter counter_from_window(const std::vector<u128>& vals, u128 clip_lo, u128 clip_hi) {
  SumCounter c;
  c.dense = false;
  bool first = true;
  for (u128 v : vals) {
    if (v < clip_lo || v > clip_hi) continue;
    ++c.map[v];
    if (first || v < c.min_key) c.min_key = v;
    if (first || v > c.max_key) c.max_key = v;
    first = false;
  }
  c.nnz = c.map.size();
  return c;
}

inline SumCounter convolve(const SumCounter& src, const std::vector<u128>& wvals, u128 clip_lo,
                           u128 clip_hi, std::size_t budget_bytes) {
  SumCounter dst;
  if (src.nnz == 0 || wvals.empty()) return dst;
  u128 lo = src.min_key + wvals.front();
  u128 hi = src.max_key + wvals.back();
  if (clip_lo > lo) lo = clip_lo;
  if (clip_hi < hi) hi = clip_hi;
  if (lo > hi) return dst;
  // two counters coexist at join time: each side gets half the budget
  u128 range = hi - lo + 1;
  bool use_dense = range <= budget_bytes / 16;
  bool first = true;
  auto note_key = [&](u128 k) {
    if (first || k < dst.min_key) dst.min_key = k;
    if (first || k > dst.max_key) dst.max_key = k;
    first = false;
  };
  if (use_dense) {
    dst.dense = true;
    dst.base = lo;
    dst.slots.assign(static_cast<std::size_t>(range), 0);
    src.for_each([&](u128 v, u64 c) {
      for (u128 w : wvals) {
        u128 t = v + w;
        if (t < lo || t > hi) continue;
        u64& slot = dst.slots[static_cast<std::size_t>(t - lo)];
        if (slot == 0) ++dst.nnz;
        slot += c;
        note_key(t);
      }
    });
  } else {
    dst.dense = false;
    std::size_t max_entries = budget_bytes / 96;
    src.for_each([&](u128 v, u64 c) {
      for (u128 w : wvals) {
        u128 t = v + w;
        if (t < lo || t > hi) continue;
        u64& slot = dst.map[t];
        if (slot == 0 && dst.map.size() > max_entries)
          throw BudgetExceeded("count: sparse counter exceeded memory budget at " +
                               std::to_string(dst.map.size()) + " entries");
        slot += c;
        note_key(t);
      }
    });
    dst.nnz = dst.map.size();
  }
  return dst;
}

inline void u128_accumulate_flush(u128& acc, mpz_class& big) {
  big += u128_to_mpz(acc);
  acc = 0;
}

/// Arbitrary-width fallback: same half/fold/join scheme over mpz keys in an
/// ordered map. Hit only when sum values outgrow 127 bits.
inline mpz_class count_representations_wide(const std::vector<WindowRange>& ranges, unsigned n,
                                            const mpz_class& N, int r, std::size_t budget_bytes) {
  std::vector<std::vector<mpz_class>> windows;
  for (const auto& range : ranges) {
    std::vector<mpz_class> vals;
    for (i64 m = range.lo; m <= range.hi; ++m) {
      mpz_class v;
      mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(m), n);
      vals.push_back(v);
    }
    if (vals.empty()) return 0;
    windows.push_back(std::move(vals));
  }
  std::sort(windows.begin(), windows.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
  using Map = std::map<mpz_class, u64>;
  const std::size_t max_entries = std::max<std::size_t>(1024, budget_bytes / 96);
  int left_count = r / 2;
  auto fold_half = [&](int from, int to) -> Map {
    mpz_class others_min = 0, others_max = 0;
    for (int i = 0; i < r; ++i) {
      if (i >= from && i < to) continue;
      others_min += windows[static_cast<std::size_t>(i)].front();
      others_max += windows[static_cast<std::size_t>(i)].back();
    }
    Map acc;
    for (int i = from; i < to; ++i) {
      const auto& w = windows[static_cast<std::size_t>(i)];
      mpz_class pend_min = 0, pend_max = 0;
      for (int j = i + 1; j < to; ++j) {
        pend_min += windows[static_cast<std::size_t>(j)].front();
        pend_max += windows[static_cast<std::size_t>(j)].back();
      }
      mpz_class clip_lo = N - (others_max + pend_max);
      mpz_class clip_hi = N - (others_min + pend_min);
      Map next;
      auto push = [&](const mpz_class& key, u64 c) {
        if (key < clip_lo || key > clip_hi) return;
        u64& slot = next[key];
        if (slot == 0 && next.size() > max_entries)
          throw BudgetExceeded("count: wide-path counter exceeded memory budget");
        slot += c;
      };
      if (i == from) {
        for (const auto& v : w) push(v, 1);
      } else {
        for (const auto& [v, c] : acc)
          for (const auto& wv : w) push(v + wv, c);
      }
      acc = std::move(next);
      if (acc.empty()) return acc;
    }
    return acc;
  };
  auto left = fold_half(0, left_count);
  mpz_class result = 0;
  if (left.empty()) return result;
  auto right = fold_half(left_count, r);
  for (const auto& [v, c] : left) {
    auto it = right.find(N - v);
    if (it != right.end()) result += mpz_class(c) * it->second;
  }
  return result;
}

}  // namespace detail

struct CountStats {
  std::vector<i64> window_sizes;
  std::size_t left_counter_size = 0;
  std::size_t right_counter_size = 0;
  double seconds = 0.0;
};

/// Exact ordered count of solutions sum x_i^n = N with x_i in window i.
/// Meet-in-the-middle: windows split into two halves, each half folded into a
/// sum-multiplicity counter (smallest windows first), then joined on N.
/// Counters are clipped to the values reachable by the complement.
inline mpz_class count_representations(const ProblemInstance& p, std::size_t mem_budget_mb = 2048,
                                       CountStats* stats = nullptr) {
  p.validate();
  auto t0 = std::chrono::steady_clock::now();
  const std::size_t budget_bytes = mem_budget_mb << 20;
  const unsigned n = static_cast<unsigned>(p.n);

  std::vector<WindowRange> ranges;
  mpz_class max_total = 0;
  bool any_empty = false;
  for (int i = 0; i < p.r; ++i) {
    auto range = power_window_range(p.n, p.mu[static_cast<std::size_t>(i)] * static_cast<double>(p.N), p.H);
    if (stats) stats->window_sizes.push_back(range.size());
    if (range.size() == 0)
      any_empty = true;
    else {
      mpz_class v;
      mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(range.hi), n);
      max_total += v;
    }
    ranges.push_back(range);
  }
  if (!any_empty && max_total >= (mpz_class(1) << 126)) {
    // values outgrow the 127-bit keys: promote to arbitrary width
    mpz_class wide = detail::count_representations_wide(ranges, n, mpz_class(static_cast<long>(p.N)),
                                                        p.r, budget_bytes);
    if (stats)
      stats->seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return wide;
  }

  std::vector<std::vector<u128>> windows;
  for (const auto& range : ranges) {
    std::vector<u128> vals;
    for (i64 m = range.lo; m <= range.hi; ++m)
      vals.push_back(*checked_pow_u128(static_cast<u128>(m), n));
    windows.push_back(std::move(vals));
  }

  mpz_class result = 0;
  if (!any_empty) {
    std::sort(windows.begin(), windows.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    const u128 N = static_cast<u128>(p.N);
    int left_count = p.r / 2;
    // fold order: left half then right half, each smallest-first
    auto fold_half = [&](int from, int to) {
      // running clip: keys must stay joinable with every window not yet folded
      u128 others_min = 0, others_max = 0;
      for (int i = 0; i < p.r; ++i) {
        if (i >= from && i < to) continue;
        others_min += windows[static_cast<std::size_t>(i)].front();
        others_max += windows[static_cast<std::size_t>(i)].back();
      }
      detail::SumCounter acc;
      for (int i = from; i < to; ++i) {
        const auto& w = windows[static_cast<std::size_t>(i)];
        u128 pend_min = 0, pend_max = 0;
        for (int j = i + 1; j < to; ++j) {
          pend_min += windows[static_cast<std::size_t>(j)].front();
          pend_max += windows[static_cast<std::size_t>(j)].back();
        }
        u128 need_min = others_min + pend_min, need_max = others_max + pend_max;
        u128 clip_lo = N >= need_max ? N - need_max : 0;
        u128 clip_hi = N >= need_min ? N - need_min : 0;
        if (N < need_min) return detail::SumCounter{};  // unreachable target
        acc = (i == from) ? detail::counter_from_window(w, clip_lo, clip_hi)
                          : detail::convolve(acc, w, clip_lo, clip_hi, budget_bytes);
        if (acc.nnz == 0) return acc;
      }
      return acc;
    };
    auto left = fold_half(0, left_count);
    auto right = (left.nnz == 0) ? detail::SumCounter{} : fold_half(left_count, p.r);
    if (stats) {
      stats->left_counter_size = left.nnz;
      stats->right_counter_size = right.nnz;
    }
    if (left.nnz != 0 && right.nnz != 0) {
      const detail::SumCounter& small = left.nnz <= right.nnz ? left : right;
      const detail::SumCounter& large = left.nnz <= right.nnz ? right : left;
      u128 acc = 0;
      const u128 acc_guard = ~static_cast<u128>(0) >> 2;
      small.for_each([&](u128 v, u64 c) {
        if (v > N) return;
        u64 c2 = large.at(N - v);
        if (c2 == 0) return;
        u128 prod = static_cast<u128>(c) * c2;
        if (acc > acc_guard) detail::u128_accumulate_flush(acc, result);
        acc += prod;
      });
      detail::u128_accumulate_flush(acc, result);
    }
  }
  if (stats)
    stats->seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

/// Depth-first enumeration with prefix-sum window pruning; the verification
/// oracle for count_representations.
inline mpz_class count_representations_naive(const ProblemInstance& p,
                                             u64 node_budget = 100'000'000) {
  p.validate();
  const unsigned n = static_cast<unsigned>(p.n);
  std::vector<std::vector<u128>> windows;
  for (int i = 0; i < p.r; ++i) {
    auto range = power_window_range(p.n, p.mu[static_cast<std::size_t>(i)] * static_cast<double>(p.N), p.H);
    std::vector<u128> vals;
    for (i64 m = range.lo; m <= range.hi; ++m) {
      auto v = checked_pow_u128(static_cast<u128>(m), n);
      if (!v) throw BudgetExceeded("naive count: values exceed 128 bits");
      vals.push_back(*v);
    }
    if (vals.empty()) return 0;
    windows.push_back(std::move(vals));
  }
  std::size_t r = windows.size();
  std::vector<u128> suff_min(r + 1, 0), suff_max(r + 1, 0);
  for (std::size_t i = r; i-- > 0;) {
    suff_min[i] = suff_min[i + 1] + windows[i].front();
    suff_max[i] = suff_max[i + 1] + windows[i].back();
  }
  const u128 N = static_cast<u128>(p.N);
  u64 visited = 0;
  u64 count = 0;
  auto dfs = [&](auto&& self, std::size_t i, u128 partial) -> void {
    if (++visited > node_budget) throw BudgetExceeded("naive count: node budget exceeded");
    if (partial + suff_min[i] > N || partial + suff_max[i] < N) return;
    if (i == r) {
      ++count;  // partial == N guaranteed by the two prunes at i == r
      return;
    }
    for (u128 v : windows[i]) self(self, i + 1, partial + v);
  };
  dfs(dfs, 0, 0);
  return mpz_class(static_cast<unsigned long>(count));
}

struct MomentCount {
  int k = 1;
  mpz_class count;
  bool window_hypothesis_ok = true;  // sqrt(x) < y <= x / ln x
  std::size_t base_counter_size = 0;
  double seconds = 0.0;
};

namespace detail {

struct ValueMultiset {
  std::vector<u128> vals;  // ascending, distinct
  std::vector<u64> mult;
  u64 mass() const {
    u64 m = 0;
    for (u64 c : mult) m += c;
    return m;
  }
};

/// Sorted pair-sum self-convolution (ordered pairs).
inline ValueMultiset self_convolve(const ValueMultiset& m, std::size_t budget_bytes) {
  std::size_t pairs = m.vals.size() * (m.vals.size() + 1) / 2;
  if (pairs * 24 > budget_bytes)
    throw BudgetExceeded("moment: pair convolution exceeds memory budget");
  std::vector<std::pair<u128, u64>> sums;
  sums.reserve(pairs);
  for (std::size_t i = 0; i < m.vals.size(); ++i) {
    sums.emplace_back(m.vals[i] * 2, m.mult[i] * m.mult[i]);
    for (std::size_t j = i + 1; j < m.vals.size(); ++j)
      sums.emplace_back(m.vals[i] + m.vals[j], 2 * m.mult[i] * m.mult[j]);
  }
  std::sort(sums.begin(), sums.end());
  ValueMultiset out;
  for (const auto& [v, c] : sums) {
    if (!out.vals.empty() && out.vals.back() == v)
      out.mult.back() += c;
    else {
      out.vals.push_back(v);
      out.mult.push_back(c);
    }
  }
  return out;
}

/// Additive energy: number of weighted ordered quadruples u+v = w+z.
/// Pair sums are enumerated once, partitioned into value bands so only one
/// band's tally is in memory at a time.
inline mpz_class additive_energy(const ValueMultiset& m, std::size_t budget_bytes) {
  mpz_class energy = 0;
  if (m.vals.empty()) return energy;
  std::size_t npairs = m.vals.size() * (m.vals.size() + 1) / 2;
  std::size_t band_target = std::max<std::size_t>(1 << 16, std::min<std::size_t>(budget_bytes / 24, 8u << 20));
  std::size_t nbands = std::max<std::size_t>(1, (npairs + band_target - 1) / band_target);
  u128 lo = m.vals.front() * 2, hi = m.vals.back() * 2;
  u128 width = hi - lo + 1;
  if (nbands > width) nbands = static_cast<std::size_t>(width);
  u128 band_w = width / nbands + 1;
  std::vector<std::pair<u128, u64>> buf;
  u128 acc = 0;
  const u128 acc_guard = ~static_cast<u128>(0) >> 2;
  for (std::size_t b = 0; b < nbands; ++b) {
    u128 blo = lo + band_w * b;
    if (blo > hi) break;
    u128 bhi = blo + band_w - 1;  // inclusive
    if (bhi > hi) bhi = hi;
    buf.clear();
    for (std::size_t i = 0; i < m.vals.size(); ++i) {
      u128 vi = m.vals[i];
      if (vi + m.vals.back() < blo || vi * 2 > bhi) continue;
      u128 tlo = blo > vi ? blo - vi : 0;
      u128 thi = bhi - vi;  // bhi >= vi + something in range
      auto first = std::lower_bound(m.vals.begin() + static_cast<std::ptrdiff_t>(i), m.vals.end(), tlo);
      for (auto it = first; it != m.vals.end() && *it <= thi; ++it) {
        std::size_t j = static_cast<std::size_t>(it - m.vals.begin());
        u64 wgt = (j == i) ? m.mult[i] * m.mult[i] : 2 * m.mult[i] * m.mult[j];
        buf.emplace_back(vi + *it, wgt);
      }
    }
    std::sort(buf.begin(), buf.end());
    std::size_t i = 0;
    while (i < buf.size()) {
      u128 v = buf[i].first;
      u64 c = 0;
      while (i < buf.size() && buf[i].first == v) c += buf[i++].second;
      u128 sq = static_cast<u128>(c) * c;
      if (acc > acc_guard) u128_accumulate_flush(acc, energy);
      acc += sq;
    }
  }
  u128_accumulate_flush(acc, energy);
  return energy;
}

}  // namespace detail

/// Exact number of ordered 2^k-tuples from (x-y, x] whose two halves have
/// equal sums of n-th powers: sum_s C_nu(s)^2 with nu = 2^{k-1}, computed as
/// the additive energy of the (nu/2)-fold counter.
inline MomentCount moment_integral(const WindowSpec& w, int k, std::size_t mem_budget_mb = 2048) {
  w.validate();
  if (k < 1 || k > w.n) throw std::invalid_argument("moment_integral: need 1 <= k <= n");
  auto t0 = std::chrono::steady_clock::now();
  MomentCount out;
  out.k = k;
  out.window_hypothesis_ok = w.moment_range_ok();
  unsigned nu = 1u << (k - 1);
  auto top = checked_pow_u128(static_cast<u128>(w.x), static_cast<unsigned>(w.n));
  if (!top || u128_bit_width(*top) + k > 126)
    throw BudgetExceeded("moment: sum values exceed the 127-bit fast path");
  if (k == 1) {
    // m^n is strictly increasing, so every value is distinct and the
    // orthogonality count collapses to the diagonal.
    out.count = w.y;
  } else {
    detail::ValueMultiset m;
    for (i64 mm = w.x - w.y + 1; mm <= w.x; ++mm) {
      m.vals.push_back(*checked_pow_u128(static_cast<u128>(mm), static_cast<unsigned>(w.n)));
      m.mult.push_back(1);
    }
    for (unsigned fold = 2; fold < nu; fold *= 2)
      m = detail::self_convolve(m, mem_budget_mb << 20);
    out.base_counter_size = m.vals.size();
    out.count = detail::additive_energy(m, mem_budget_mb << 20);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace waring::counting
