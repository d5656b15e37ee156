#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "waring/exp_sums.hpp"
#include "waring/numeric.hpp"

namespace waring::singular {

/// Local factor A(q,N); the imaginary part is diagnostic only (terms pair
/// conjugately under a -> q-a).
struct LocalFactor {
  i64 q = 1;
  cplx value{0.0, 0.0};
};

namespace detail {

inline cplx cpow_int(cplx z, unsigned e) {
  cplx r{1.0, 0.0};
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Precomputed (S(a,q)/q)^r per modulus; S(a,q) does not depend on N, so scans
/// over many N reuse one table.
class SeriesTable {
 public:
  SeriesTable(int n, int r, i64 q_max) : n_(n), r_(r), q_max_(q_max) {
    if (q_max < 1) throw std::invalid_argument("SeriesTable: need q_max >= 1");
    rows_.resize(static_cast<std::size_t>(q_max) + 1);
    for (i64 q = 1; q <= q_max; ++q) {
      auto row = exp_sums::complete_sum_row(n, q);
      auto& out = rows_[static_cast<std::size_t>(q)];
      for (i64 a = 0; a < q; ++a) {
        if (!row.coprime[static_cast<std::size_t>(a)]) continue;
        cplx z = row.value[static_cast<std::size_t>(a)] / static_cast<double>(q);
        out.emplace_back(a, detail::cpow_int(z, static_cast<unsigned>(r)));
      }
    }
  }

  int degree() const { return n_; }
  int summands() const { return r_; }
  i64 q_max() const { return q_max_; }

  /// A(q,N) = sum over coprime a of (S(a,q)/q)^r e(-aN/q).
  LocalFactor local_sum(i64 q, i64 N) const {
    if (q < 1 || q > q_max_) throw std::invalid_argument("SeriesTable: q out of range");
    const u64 qu = static_cast<u64>(q);
    const u64 Nm = static_cast<u64>(N % q);
    cplx acc{0.0, 0.0};
    for (const auto& [a, z] : rows_[static_cast<std::size_t>(q)]) {
      u64 t = mulmod_u64(static_cast<u64>(a), Nm, qu);
      acc += z * unit_phase(static_cast<double>((qu - t) % qu) / static_cast<double>(qu));
    }
    return LocalFactor{q, acc};
  }

 private:
  int n_;
  int r_;
  i64 q_max_;
  std::vector<std::vector<std::pair<i64, cplx>>> rows_;
};

inline LocalFactor local_sum(int n, int r, i64 q, i64 N) {
  if (q < 1) throw std::invalid_argument("local_sum: modulus must be >= 1");
  if (N < 0) throw std::invalid_argument("local_sum: target must be >= 0");
  auto row = exp_sums::complete_sum_row(n, q);
  const u64 qu = static_cast<u64>(q);
  const u64 Nm = static_cast<u64>(N % q);
  cplx acc{0.0, 0.0};
  for (i64 a = 0; a < q; ++a) {
    if (!row.coprime[static_cast<std::size_t>(a)]) continue;
    cplx z = detail::cpow_int(row.value[static_cast<std::size_t>(a)] / static_cast<double>(q),
                              static_cast<unsigned>(r));
    u64 t = mulmod_u64(static_cast<u64>(a), Nm, qu);
    acc += z * unit_phase(static_cast<double>((qu - t) % qu) / static_cast<double>(qu));
  }
  return LocalFactor{q, acc};
}

struct SeriesValue {
  double value = 0.0;          // sum of A(q,N) for q <= Q
  double tail_estimate = 0.0;  // calibrated bound on the dropped q > Q mass
  bool tail_divergent_warning = false;  // r/n <= 2: the tail model diverges
};

/// Truncated singular series with a tail constant calibrated on the last
/// computed octave (Q/2, Q]; the paper's bound hides its constant, so both a
/// peak-based and a mass-based fit are taken and the larger wins.
inline SeriesValue singular_series(const SeriesTable& table, i64 N, i64 Q) {
  if (Q < 1 || Q > table.q_max())
    throw std::invalid_argument("singular_series: truncation out of table range");
  const double decay = static_cast<double>(table.summands()) / table.degree() - 1.0;  // A(q) ~ q^{-decay}
  SeriesValue out;
  out.tail_divergent_warning = decay <= 1.0;
  double peak = 0.0;       // max |A(q)| q^{decay} over the octave
  double octave_mass = 0.0;
  for (i64 q = 1; q <= Q; ++q) {
    cplx a = table.local_sum(q, N).value;
    out.value += a.real();
    if (2 * q > Q) {
      double mag = std::abs(a);
      peak = std::max(peak, mag * std::pow(static_cast<double>(q), decay));
      octave_mass += mag;
    }
  }
  if (!out.tail_divergent_warning) {
    double Qd = static_cast<double>(Q);
    double tail_from_peak = peak * std::pow(Qd, 1.0 - decay) / (decay - 1.0);
    double tail_from_mass = octave_mass / (std::pow(2.0, decay - 1.0) - 1.0);
    out.tail_estimate = std::max(tail_from_peak, tail_from_mass);
  }
  return out;
}

inline SeriesValue singular_series(int n, int r, i64 N, i64 Q) {
  SeriesTable table(n, r, Q);
  return singular_series(table, N, Q);
}

/// Relative deviation of A(q1 q2, N) from A(q1,N) A(q2,N) for coprime moduli.
inline double multiplicativity_check(int n, int r, i64 N, i64 q1, i64 q2) {
  if (std::gcd(q1, q2) != 1)
    throw std::invalid_argument("multiplicativity_check: moduli must be coprime");
  cplx joint = local_sum(n, r, q1 * q2, N).value;
  cplx split = local_sum(n, r, q1, N).value * local_sum(n, r, q2, N).value;
  double denom = std::max(std::abs(joint), std::abs(split));
  double diff = std::abs(joint - split);
  return denom < 1e-12 ? diff : diff / denom;
}

}  // namespace waring::singular
