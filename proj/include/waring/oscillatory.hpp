#pragma once

#include <cmath>
#include <stdexcept>

#include "waring/numeric.hpp"
#include "waring/types.hpp"

namespace waring::oscillatory {

/// gamma(lambda; x, y) = int_{-1/2}^{1/2} e(lambda (x - y/2 + y t)^n) dt,
/// with real window parameters. Panel count follows the exact phase range
/// lambda (x^n - (x-y)^n), so each panel sees at most half a cycle and
/// Gauss-Legendre 16 delivers ~1e-15 per panel.
inline cplx gamma_integral(int n, double x, double y, double lambda) {
  if (n < 2 || !(x > 0.0) || !(y > 0.0) || y > x)
    throw std::invalid_argument("gamma_integral: need n >= 2, 0 < y <= x");
  if (lambda == 0.0) return cplx{1.0, 0.0};
  double variation =
      std::fabs(lambda) * (dpow(x, static_cast<unsigned>(n)) - dpow(x - y, static_cast<unsigned>(n)));
  i64 panels = static_cast<i64>(std::ceil(2.0 * variation)) + 1;
  panels = std::min<i64>(panels, 5'000'000);
  const auto& gl = gauss_legendre_16();
  const double width = 1.0 / static_cast<double>(panels);
  cplx total{0.0, 0.0};
  for (i64 p = 0; p < panels; ++p) {
    double t0 = -0.5 + p * width;
    double mid = t0 + 0.5 * width;
    double half = 0.5 * width;
    cplx acc{0.0, 0.0};
    for (int i = 0; i < 16; ++i) {
      double t = mid + half * gl.nodes[i];
      double u = x - 0.5 * y + y * t;
      double g = lambda * dpow(u, static_cast<unsigned>(n));
      acc += gl.weights[i] * unit_phase(g - std::floor(g));
    }
    total += acc * half;
  }
  return total;
}

inline cplx gamma_integral(const WindowSpec& w, double lambda) {
  w.validate();
  return gamma_integral(w.n, static_cast<double>(w.x), static_cast<double>(w.y), lambda);
}

/// The archimedean constant of the main term, as an exact rational.
/// Depends only on r even though it is conventionally written with both
/// arguments; the alternating sum cancels catastrophically in doubles for
/// r beyond ~15, hence the integer arithmetic.
struct GammaConstant {
  unsigned r = 2;
  mpq_class exact;
  double real_value = 0.0;

  const mpz_class& numerator() const { return exact.get_num(); }
  const mpz_class& denominator() const { return exact.get_den(); }
};

inline GammaConstant gamma_constant(unsigned r) {
  if (r < 2) throw std::invalid_argument("gamma_constant: need r >= 2");
  mpz_class num = 0;
  for (unsigned j = 0; 2 * j < r; ++j) {
    mpz_class term;
    mpz_bin_uiui(term.get_mpz_t(), r, j);
    mpz_class base(r - 2 * j);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), r - 1);
    term *= pw;
    if (j % 2 == 0)
      num += term;
    else
      num -= term;
  }
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), r - 1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), r);
  GammaConstant g;
  g.r = r;
  g.exact = mpq_class(num, den);
  g.exact.canonicalize();
  g.real_value = g.exact.get_d();
  return g;
}

namespace detail {

/// int_T^inf e(i m t) t^{-s} dt by three explicit integrations by parts;
/// the dropped remainder is below T^{-(s+2)} * s(s+1)(s+2)/(|m|^3 (s+2)).
inline cplx oscillatory_tail(double m, int s, double T) {
  const cplx im{0.0, m};
  const cplx eimT = std::exp(cplx{0.0, m * T});
  cplx value{0.0, 0.0};
  cplx coef{1.0, 0.0};
  for (int level = 0; level < 3; ++level) {
    double sl = static_cast<double>(s + level);
    value += coef * (-eimT / (im * std::pow(T, sl)));
    coef *= sl / im;
  }
  return value;
}

}  // namespace detail

/// (1/pi) int_0^inf (sin t / t)^r dt, evaluated independently of the exact
/// rational route: quadrature on [0,T] plus the analytic tail of the finite
/// Fourier expansion of sin^r. Total error stays below 1e-11.
inline double gamma_oracle(unsigned r) {
  if (r < 2) throw std::invalid_argument("gamma_oracle: need r >= 2");
  const double T = 1000.0;
  const auto& gl = gauss_legendre_16();
  const double panel = std::numbers::pi / 2.0;
  const i64 panels = static_cast<i64>(std::ceil(T / panel));
  double quad = 0.0;
  for (i64 p = 0; p < panels; ++p) {
    double a = p * panel;
    double b = std::min(T, a + panel);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
      double t = mid + half * gl.nodes[i];
      double sinc = (t < 1e-9) ? 1.0 - t * t / 6.0 : std::sin(t) / t;
      acc += gl.weights[i] * dpow(sinc, r);
    }
    quad += acc * half;
  }
  // sin^r t = sum_j binom(r,j) (-1)^j e(i (r-2j) t) / (2i)^r
  cplx inv_2i_pow{1.0, 0.0};
  const cplx inv_2i = 1.0 / cplx{0.0, 2.0};
  for (unsigned i = 0; i < r; ++i) inv_2i_pow *= inv_2i;
  cplx tail{0.0, 0.0};
  double binom = 1.0;
  for (unsigned j = 0; j <= r; ++j) {
    double mj = static_cast<double>(r) - 2.0 * static_cast<double>(j);
    cplx cj = inv_2i_pow * binom * ((j % 2 == 0) ? 1.0 : -1.0);
    if (mj == 0.0) {
      tail += cj * (std::pow(T, 1.0 - static_cast<double>(r)) / (static_cast<double>(r) - 1.0));
    } else {
      tail += cj * detail::oscillatory_tail(mj, static_cast<int>(r), T);
    }
    binom = binom * static_cast<double>(r - j) / static_cast<double>(j + 1);
  }
  return (quad + tail.real()) / std::numbers::pi;
}

}  // namespace waring::oscillatory
