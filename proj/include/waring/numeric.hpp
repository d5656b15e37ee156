#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

namespace waring {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;
using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double u128_to_double(u128 v) {
  return std::ldexp(static_cast<double>(static_cast<u64>(v >> 64)), 64) +
         static_cast<double>(static_cast<u64>(v));
}

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline mpz_class u128_to_mpz(u128 v) {
  mpz_class hi(static_cast<unsigned long>(static_cast<u64>(v >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<u64>(v)));
  return (hi << 64) + lo;
}

inline int u128_bit_width(u128 v) {
  int w = 0;
  while (v > 0) { ++w; v >>= 1; }
  return w;
}

struct U128Hash {
  std::size_t operator()(u128 v) const noexcept {
    u64 x = static_cast<u64>(v) ^ (static_cast<u64>(v >> 64) * 0x9e3779b97f4a7c15ULL);
    x ^= x >> 33; x *= 0xff51afd7ed558ccdULL; x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// m^n as an exact 128-bit integer, or nullopt on overflow.
inline std::optional<u128> checked_pow_u128(u128 m, unsigned n) {
  u128 r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (m != 0 && r > static_cast<u128>(-1) / m) return std::nullopt;
    r *= m;
  }
  return r;
}

/// e(t) for t given as a fraction of a full turn.
inline cplx unit_phase(double frac) {
  double ang = two_pi * frac;
  return {std::cos(ang), std::sin(ang)};
}

/// Integer power of a double by squaring (std::pow rejects negative bases
/// with fractional-typed exponents).
inline double dpow(double base, unsigned e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

/// Fractional part of lambda*M in [0,1), computed through the exact dyadic
/// representation lambda = p/2^s so that the reduction mod 1 happens in
/// integer arithmetic. One rounding at the very end.
inline double frac_dyadic_times_u128(double lambda, u128 M) {
  if (lambda == 0.0 || M == 0) return 0.0;
  bool neg = lambda < 0.0;
  double al = std::fabs(lambda);
  int e2 = 0;
  double f = std::frexp(al, &e2);
  u64 p = static_cast<u64>(std::ldexp(f, 53));  // exact: al = p / 2^(53-e2)
  int s = 53 - e2;
  double frac = 0.0;
  if (s <= 0) {
    frac = 0.0;  // al*M is an integer
  } else if (s <= 128) {
    u128 r = static_cast<u128>(p) * M;  // wraps mod 2^128
    if (s < 128) r &= (static_cast<u128>(1) << s) - 1;
    frac = std::ldexp(u128_to_double(r), -s);
  } else if (53 + u128_bit_width(M) <= s) {
    frac = std::ldexp(static_cast<double>(p) * u128_to_double(M), -s);
  } else {
    mpz_class r = mpz_class(static_cast<unsigned long>(p)) * u128_to_mpz(M);
    mpz_tdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    if (s > 64) {
      mpz_class top;
      mpz_tdiv_q_2exp(top.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(s - 64));
      frac = std::ldexp(top.get_d(), -64);
    } else {
      frac = std::ldexp(r.get_d(), -s);
    }
  }
  if (frac >= 1.0) frac -= 1.0;
  if (neg && frac != 0.0) frac = 1.0 - frac;
  if (frac >= 1.0) frac = std::nextafter(1.0, 0.0);
  return frac;
}

/// Same reduction for an arbitrary-width M.
inline double frac_dyadic_times_mpz(double lambda, const mpz_class& M) {
  if (lambda == 0.0 || sgn(M) == 0) return 0.0;
  bool neg = (lambda < 0.0) != (sgn(M) < 0);
  mpz_class A = abs(M);
  double al = std::fabs(lambda);
  int e2 = 0;
  double f = std::frexp(al, &e2);
  u64 p = static_cast<u64>(std::ldexp(f, 53));
  int s = 53 - e2;
  double frac = 0.0;
  if (s > 0) {
    mpz_class r = mpz_class(static_cast<unsigned long>(p)) * A;
    mpz_tdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    if (s > 64) {
      mpz_class top;
      mpz_tdiv_q_2exp(top.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(s - 64));
      frac = std::ldexp(top.get_d(), -64);
    } else {
      frac = std::ldexp(r.get_d(), -s);
    }
  }
  if (frac >= 1.0) frac -= 1.0;
  if (neg && frac != 0.0) frac = 1.0 - frac;
  if (frac >= 1.0) frac = std::nextafter(1.0, 0.0);
  return frac;
}

/// Pairwise summation of f(lo..hi-1); keeps rounding growth logarithmic.
template <typename F>
cplx pairwise_accumulate(i64 lo, i64 hi, F&& f) {
  if (hi - lo <= 4096) {
    cplx acc{0.0, 0.0};
    for (i64 k = lo; k < hi; ++k) acc += f(k);
    return acc;
  }
  i64 mid = lo + (hi - lo) / 2;
  return pairwise_accumulate(lo, mid, f) + pairwise_accumulate(mid, hi, f);
}

/// Gauss-Legendre nodes and weights on [-1,1], computed once per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline const GaussLegendre& gauss_legendre_16() {
  static const GaussLegendre gl = [] {
    constexpr int n = 16;
    GaussLegendre g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        double dx = p0 / pp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      g.nodes[i] = -x;
      g.nodes[n - 1 - i] = x;
      g.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
      g.weights[n - 1 - i] = g.weights[i];
    }
    return g;
  }();
  return gl;
}

/// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fitted_slope: need >= 2 points");
  double n = static_cast<double>(x.size());
  double sx = std::accumulate(x.begin(), x.end(), 0.0);
  double sy = std::accumulate(y.begin(), y.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Chunked parallel loop; runs inline when a single worker is requested.
inline void parallel_for(i64 total, int threads, const std::function<void(i64, i64)>& fn) {
  if (total <= 0) return;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = hw > 0 ? hw : 1;
  threads = static_cast<int>(std::min<i64>(threads, total));
  if (threads <= 1) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  i64 chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    i64 lo = t * chunk;
    i64 hi = std::min<i64>(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace waring
