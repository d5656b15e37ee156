#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "waring/numeric.hpp"

namespace waring::exp_sums {

/// Complete rational sum S_b(a,q) = sum_{k=1}^{q} e((a k^n + b k)/q).
struct CompleteSumSpec {
  int n = 3;   // degree, >= 2
  i64 a = 0;   // numerator, coprime to q
  i64 q = 1;   // modulus, >= 1
  i64 b = 0;   // linear twist, taken mod q

  /// Residues in [0,q) with the coprimality invariant enforced.
  void normalize() {
    if (q <= 0) throw std::invalid_argument("complete_sum: modulus must be >= 1");
    if (n < 2) throw std::invalid_argument("complete_sum: degree must be >= 2");
    a %= q; if (a < 0) a += q;
    b %= q; if (b < 0) b += q;
    if (std::gcd(a, q) != 1)
      throw std::invalid_argument("complete_sum: a and q must be coprime");
  }
};

/// Evaluates S_b(a,q) with every phase numerator reduced mod q exactly;
/// floating point enters only at the final division by q.
inline cplx complete_sum(CompleteSumSpec spec) {
  spec.normalize();
  const u64 q = static_cast<u64>(spec.q);
  const u64 a = static_cast<u64>(spec.a);
  const u64 b = static_cast<u64>(spec.b);
  const unsigned n = static_cast<unsigned>(spec.n);
  const double inv_q = 1.0 / static_cast<double>(q);
  return pairwise_accumulate(1, spec.q + 1, [&](i64 k) {
    u64 ku = static_cast<u64>(k) % q;
    u64 t = mulmod_u64(a, powmod_u64(ku, n, q), q);
    t = (t + mulmod_u64(b, ku, q)) % q;
    return unit_phase(static_cast<double>(t) * inv_q);
  });
}

namespace detail {

/// k^n mod q for k = 1..q.
inline std::vector<u64> power_residues(int n, u64 q) {
  std::vector<u64> pw(q + 1);
  for (u64 k = 1; k <= q; ++k) pw[k] = powmod_u64(k % q, static_cast<u64>(n), q);
  return pw;
}

inline std::vector<cplx> phase_table(u64 q) {
  std::vector<cplx> root(q);
  for (u64 j = 0; j < q; ++j)
    root[j] = unit_phase(static_cast<double>(j) / static_cast<double>(q));
  return root;
}

}  // namespace detail

/// S(a,q) for all residues a in [0,q); entries with gcd(a,q) != 1 are zero-filled
/// and flagged off by the companion coprime mask. Conjugate symmetry halves work.
struct CompleteSumRow {
  std::vector<cplx> value;    // index a
  std::vector<char> coprime;  // index a
};

inline CompleteSumRow complete_sum_row(int n, i64 q_in) {
  if (q_in <= 0) throw std::invalid_argument("complete_sum_row: modulus must be >= 1");
  const u64 q = static_cast<u64>(q_in);
  CompleteSumRow row;
  row.value.assign(q, cplx{0.0, 0.0});
  row.coprime.assign(q, 0);
  if (q == 1) {
    row.value[0] = cplx{1.0, 0.0};
    row.coprime[0] = 1;
    return row;
  }
  auto pw = detail::power_residues(n, q);
  auto root = detail::phase_table(q);
  for (u64 a = 1; a <= q / 2; ++a) {
    if (std::gcd(a, q) != 1) continue;
    cplx s = pairwise_accumulate(1, static_cast<i64>(q) + 1, [&](i64 k) {
      return root[mulmod_u64(a, pw[static_cast<u64>(k)], q)];
    });
    row.value[a] = s;
    row.coprime[a] = 1;
    u64 ac = q - a;
    row.value[ac] = std::conj(s);
    row.coprime[ac] = 1;
  }
  return row;
}

/// max over coprime a and all b of |S_b(a,q)| / (sqrt(q) * gcd(b,q)).
/// The a-grid may be partitioned across workers; the max-reduction is
/// order-independent.
inline double hua_bound_ratio(int n, i64 q_in, int threads = 1) {
  if (q_in <= 0) throw std::invalid_argument("hua_bound_ratio: modulus must be >= 1");
  const u64 q = static_cast<u64>(q_in);
  if (q == 1) return 1.0;
  auto pw = detail::power_residues(n, q);
  auto root = detail::phase_table(q);
  const double sq = std::sqrt(static_cast<double>(q));
  // (a,b) -> (q-a,q-b) conjugates the sum, so a up to q/2 covers all magnitudes.
  std::vector<u64> a_values;
  for (u64 a = 1; a <= q / 2; ++a)
    if (std::gcd(a, q) == 1) a_values.push_back(a);
  std::vector<double> chunk_best(a_values.size(), 0.0);
  parallel_for(static_cast<i64>(a_values.size()), threads, [&](i64 lo, i64 hi) {
    std::vector<u64> ta(q + 1);
    for (i64 ia = lo; ia < hi; ++ia) {
      u64 a = a_values[static_cast<std::size_t>(ia)];
      for (u64 k = 1; k <= q; ++k) ta[k] = mulmod_u64(a, pw[k], q);
      double best = 0.0;
      for (u64 b = 0; b < q; ++b) {
        cplx s{0.0, 0.0};
        u64 bk = 0;
        for (u64 k = 1; k <= q; ++k) {
          bk += b;
          if (bk >= q) bk -= q;
          u64 idx = ta[k] + bk;
          if (idx >= q) idx -= q;
          s += root[idx];
        }
        double denom = sq * static_cast<double>(std::gcd(b, q));
        double ratio = std::abs(s) / denom;
        if (ratio > best) best = ratio;
      }
      chunk_best[static_cast<std::size_t>(ia)] = best;
    }
  });
  double best = 0.0;
  for (double b : chunk_best) best = std::max(best, b);
  return best;
}

/// max over coprime a of |S(a,q)| / q^{1-1/n}.
inline double weyl_complete_ratio(int n, i64 q_in) {
  if (q_in <= 0) throw std::invalid_argument("weyl_complete_ratio: modulus must be >= 1");
  const u64 q = static_cast<u64>(q_in);
  if (q == 1) return 1.0;
  auto row = complete_sum_row(n, q_in);
  double best = 0.0;
  for (u64 a = 0; a < q; ++a)
    if (row.coprime[a]) best = std::max(best, std::abs(row.value[a]));
  return best / std::pow(static_cast<double>(q), 1.0 - 1.0 / n);
}

}  // namespace waring::exp_sums
