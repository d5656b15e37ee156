#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "waring/numeric.hpp"
#include "waring/types.hpp"

namespace waring::weyl {

namespace detail {

/// frac(lambda * M) for signed 128-bit M.
inline double frac_lambda_times(double lambda, i128 M) {
  if (M < 0) return frac_dyadic_times_u128(-lambda, static_cast<u128>(-M));
  return frac_dyadic_times_u128(lambda, static_cast<u128>(M));
}

inline cplx phase_term(double frac_rational, double frac_irrational) {
  double f = frac_rational + frac_irrational;
  if (f >= 1.0) f -= 1.0;
  return unit_phase(f);
}

}  // namespace detail

/// T(alpha; x, y) = sum_{x-y < m <= x} e((a/q + lambda) m^n).
/// The rational part of the phase is an exact residue mod q; the lambda part
/// is reduced mod 1 through the dyadic decomposition of lambda against the
/// exact integer m^n (abs. phase error < 1e-9 per term, in practice ~1e-15).
inline cplx short_weyl_sum(const WindowSpec& w, const ArcPoint& arc) {
  w.validate();
  if (arc.q < 1) throw std::invalid_argument("short_weyl_sum: modulus must be >= 1");
  i64 a = arc.a % arc.q; if (a < 0) a += arc.q;
  if (std::gcd(a, arc.q) != 1)
    throw std::invalid_argument("short_weyl_sum: a and q must be coprime");
  const u64 q = static_cast<u64>(arc.q);
  const u64 au = static_cast<u64>(a);
  const unsigned n = static_cast<unsigned>(w.n);
  const double inv_q = 1.0 / static_cast<double>(q);
  const bool fits_u128 = checked_pow_u128(static_cast<u128>(w.x), n).has_value();
  return pairwise_accumulate(w.x - w.y + 1, w.x + 1, [&](i64 m) {
    u64 mu_ = static_cast<u64>(m) % q;
    double frac_rat =
        (q == 1 || au == 0)
            ? 0.0
            : static_cast<double>(mulmod_u64(au, powmod_u64(mu_, n, q), q)) * inv_q;
    double frac_irr;
    if (fits_u128) {
      frac_irr = frac_dyadic_times_u128(arc.lambda, *checked_pow_u128(static_cast<u128>(m), n));
    } else {
      mpz_class M;
      mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(m), n);
      frac_irr = frac_dyadic_times_mpz(arc.lambda, M);
    }
    return detail::phase_term(frac_rat, frac_irr);
  });
}

/// Raw-real entry: direct evaluation of sum e(alpha m^n).
inline cplx short_weyl_sum(const WindowSpec& w, double alpha) {
  return short_weyl_sum(w, ArcPoint{0, 1, alpha});
}

/// T_b(lambda; x, y) = sum_{x-y < m <= x} e(lambda m^n - b m / q).
inline cplx twisted_weyl_sum(const WindowSpec& w, double lambda, i64 b, i64 q) {
  w.validate();
  if (q < 1) throw std::invalid_argument("twisted_weyl_sum: modulus must be >= 1");
  b %= q; if (b < 0) b += q;
  const u64 qu = static_cast<u64>(q);
  const u64 bu = static_cast<u64>(b);
  const double inv_q = 1.0 / static_cast<double>(q);
  return pairwise_accumulate(w.x - w.y + 1, w.x + 1, [&](i64 m) {
    u64 mu_ = static_cast<u64>(m) % qu;
    u64 t = (qu - mulmod_u64(bu, mu_, qu)) % qu;  // -bm/q mod 1
    double frac_rat = static_cast<double>(t) * inv_q;
    double frac_irr =
        frac_dyadic_times_u128(lambda, *checked_pow_u128(static_cast<u128>(m), static_cast<unsigned>(w.n)));
    return detail::phase_term(frac_rat, frac_irr);
  });
}

/// Result of k-fold differencing of u^n: the exact integer polynomial g_k with
/// Delta_k(u^n; h_1..h_k) = h_1...h_k g_k(u), leading coefficient n!/(n-k)!.
struct DifferencePoly {
  int n = 0;
  int k = 0;
  std::vector<i64> shifts;
  std::vector<mpz_class> coeffs;  // ascending degree, size n-k+1

  mpz_class eval(const mpz_class& u) const {
    mpz_class acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
    return acc;
  }

  const mpz_class& leading() const { return coeffs.back(); }
};

inline DifferencePoly difference_poly(int n, const std::vector<i64>& shifts) {
  int k = static_cast<int>(shifts.size());
  if (n < 2) throw std::invalid_argument("difference_poly: degree must be >= 2");
  if (k < 1 || k >= n)
    throw std::invalid_argument("difference_poly: need 1 <= k <= n-1");
  for (i64 h : shifts)
    if (h == 0) throw std::invalid_argument("difference_poly: shifts must be nonzero");
  // p(u) = u^n, then repeatedly p(u) <- p(u+h) - p(u)
  std::vector<mpz_class> p(static_cast<std::size_t>(n) + 1, mpz_class(0));
  p[static_cast<std::size_t>(n)] = 1;
  for (i64 h : shifts) {
    std::vector<mpz_class> shifted(p.size(), mpz_class(0));
    mpz_class hz(static_cast<long>(h));
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      mpz_class binom = 1, hpow = 1;
      for (std::size_t j = 0; j <= i; ++j) {
        std::size_t deg = i - j;  // coefficient of u^{i-j}: C(i,j) h^j p_i
        shifted[deg] += p[i] * binom * hpow;
        binom = binom * static_cast<unsigned long>(i - j) / static_cast<unsigned long>(j + 1);
        hpow *= hz;
      }
    }
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = shifted[i] - p[i];
  }
  mpz_class prod = 1;
  for (i64 h : shifts) prod *= mpz_class(static_cast<long>(h));
  DifferencePoly out;
  out.n = n;
  out.k = k;
  out.shifts = shifts;
  out.coeffs.resize(static_cast<std::size_t>(n - k) + 1);
  for (int i = 0; i <= n - k; ++i) {
    mpz_class qz, rz;
    mpz_tdiv_qr(qz.get_mpz_t(), rz.get_mpz_t(), p[static_cast<std::size_t>(i)].get_mpz_t(),
                prod.get_mpz_t());
    if (rz != 0) throw std::logic_error("difference_poly: factorization identity failed");
    out.coeffs[static_cast<std::size_t>(i)] = qz;
  }
  for (std::size_t i = static_cast<std::size_t>(n - k) + 1; i <= static_cast<std::size_t>(n); ++i)
    if (p[i] != 0) throw std::logic_error("difference_poly: degree did not drop to n-k");
  return out;
}

/// Delta_k(m^n; h_1..h_k) as an exact signed 128-bit value (inputs are kept
/// small enough by the differencing-check caps).
inline i128 delta_eval_i128(int n, const std::vector<i64>& shifts, i64 m) {
  std::size_t k = shifts.size();
  i128 total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    i64 point = m;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) point += shifts[i];
    i128 pw = 1;
    for (int j = 0; j < n; ++j) pw *= point;
    int sign_flips = static_cast<int>(k) - __builtin_popcountll(static_cast<u64>(mask));
    total += (sign_flips % 2 == 0) ? pw : -pw;
  }
  return total;
}

struct DifferencingCheck {
  double lhs = 0.0;  // |T(alpha;x,y)|^{2^k}
  double rhs = 0.0;  // (2y)^{2^k-k-1} * sum over shifts of |inner sum|
};

/// Both sides of the Weyl-differencing inequality. The nested intervals are
/// intersections of half-open integer intervals; empty ones contribute zero.
inline DifferencingCheck weyl_differencing_check(const WindowSpec& w, double alpha, int k,
                                                 i64 y_cap = 512) {
  w.validate();
  if (k < 1 || k >= w.n)
    throw std::invalid_argument("weyl_differencing_check: need 1 <= k <= n-1");
  if (w.y > y_cap) throw std::invalid_argument("weyl_differencing_check: window cap exceeded");
  double shift_reach = static_cast<double>(w.x) + static_cast<double>(k) * w.y;
  if ((static_cast<double>(w.n) * std::log2(shift_reach) + k) > 126.0)
    throw std::invalid_argument("weyl_differencing_check: value width cap exceeded");

  DifferencingCheck out;
  double t_abs = std::abs(short_weyl_sum(w, alpha));
  out.lhs = dpow(t_abs, 1u << k);

  std::vector<i64> h(static_cast<std::size_t>(k), -(w.y - 1));
  double total = 0.0;
  while (true) {
    // I_k for this shift tuple: iterated intersection with its own translate
    i64 lo = w.x - w.y, hi = w.x;  // interval (lo, hi]
    for (int j = 0; j < k; ++j) {
      lo = std::max(lo, lo - h[static_cast<std::size_t>(j)]);
      hi = std::min(hi, hi - h[static_cast<std::size_t>(j)]);
    }
    if (lo < hi) {
      bool zero_shift = false;
      for (i64 hv : h)
        if (hv == 0) zero_shift = true;
      if (zero_shift) {
        total += static_cast<double>(hi - lo);  // Delta_k vanishes identically
      } else {
        cplx inner{0.0, 0.0};
        std::vector<i64> hv(h.begin(), h.end());
        for (i64 m = lo + 1; m <= hi; ++m)
          inner += unit_phase(detail::frac_lambda_times(alpha, delta_eval_i128(w.n, hv, m)));
        total += std::abs(inner);
      }
    }
    int pos = k - 1;
    while (pos >= 0 && h[static_cast<std::size_t>(pos)] == w.y - 1) {
      h[static_cast<std::size_t>(pos)] = -(w.y - 1);
      --pos;
    }
    if (pos < 0) break;
    ++h[static_cast<std::size_t>(pos)];
  }
  out.rhs = dpow(2.0 * static_cast<double>(w.y), (1u << k) - static_cast<unsigned>(k) - 1) * total;
  return out;
}

/// Exact max of the divisor function on [1, limit); u16 tally per residue.
inline u64 divisor_max_below(u64 limit) {
  if (limit <= 2) return 1;
  std::vector<std::uint16_t> cnt(limit, 0);
  for (u64 d = 1; d < limit; ++d)
    for (u64 m = d; m < limit; m += d) ++cnt[m];
  u64 best = 0;
  for (u64 h = 1; h < limit; ++h) best = std::max<u64>(best, cnt[h]);
  return best;
}

struct MinorArcBound {
  double bound = 0.0;
  bool divisor_bound_substituted = false;  // sieve cap hit; tau(h) <= 4 h^{1/3} used
  bool hypothesis_ok = true;               // y <= 0.01 x and |lambda| <= 1/q^2
};

/// 2y (4 n! (1/q + 1/y + q ln q / y^n) max_{h<y^{n-1}} tau(h))^{1/2^{n-1}}.
inline MinorArcBound minor_arc_bound(const WindowSpec& w, const ArcPoint& arc,
                                     u64 sieve_cap = 100'000'000) {
  w.validate();
  if (arc.q < 1) throw std::invalid_argument("minor_arc_bound: modulus must be >= 1");
  MinorArcBound out;
  double q = static_cast<double>(arc.q);
  out.hypothesis_ok = (static_cast<double>(w.y) <= 0.01 * static_cast<double>(w.x)) &&
                      (std::fabs(arc.lambda) <= 1.0 / (q * q));
  double limit_d = dpow(static_cast<double>(w.y), static_cast<unsigned>(w.n - 1));
  double tau_max;
  if (limit_d > static_cast<double>(sieve_cap)) {
    // Upper bound in place of the sieve: tau(h) <= 4 h^{1/3} (max ratio ~3.53 at h=2520).
    tau_max = 4.0 * std::cbrt(limit_d);
    out.divisor_bound_substituted = true;
  } else {
    tau_max = static_cast<double>(divisor_max_below(static_cast<u64>(limit_d)));
  }
  double fact = 1.0;
  for (int i = 2; i <= w.n; ++i) fact *= i;
  double y = static_cast<double>(w.y);
  double paren = 4.0 * fact * (1.0 / q + 1.0 / y + q * std::log(q) / dpow(y, static_cast<unsigned>(w.n))) *
                 tau_max;
  out.bound = 2.0 * y * std::pow(paren, 1.0 / static_cast<double>(u64{1} << (w.n - 1)));
  return out;
}

}  // namespace waring::weyl
