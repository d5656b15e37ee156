#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "waring/numeric.hpp"
#include "waring/types.hpp"

namespace waring::arcs {

/// Circle-method scales derived from a problem instance; weights are kept in
/// ascending order so index 1 (the smallest weight) sets the arc scale tau.
struct WindowParams {
  int n = 3;
  int r = 9;
  std::vector<double> window_top;  // N_k = (mu_k N + H)^{1/n}
  std::vector<double> window_len;  // H_k = N_k - (mu_k N - H)^{1/n}
  double tau = 1.0;
  double log_scale = 1.0;  // ln N

  double top_last() const { return window_top.back(); }
  double len_last() const { return window_len.back(); }

  /// Half-width of the center neighborhood at modulus q.
  double eta_q(i64 q) const {
    return 1.0 / (2.0 * n * static_cast<double>(q) * std::pow(top_last(), n - 1));
  }

  /// Global half-width; below eta_q for every major-arc q.
  double eta_global() const {
    return log_scale / (2.0 * n * len_last() * std::pow(top_last(), n - 1));
  }

  /// Major arcs are those with q below this.
  double major_q_limit() const { return len_last() / log_scale; }
};

inline WindowParams window_params(const ProblemInstance& p) {
  p.validate();
  WindowParams wp;
  wp.n = p.n;
  wp.r = p.r;
  std::vector<double> mu = p.mu;
  std::sort(mu.begin(), mu.end());
  double Nd = static_cast<double>(p.N);
  for (double m : mu) {
    double center = m * Nd;
    if (!(center - p.H > 0.0))
      throw std::invalid_argument("window_params: window reaches zero (mu_k N - H <= 0)");
    double top = std::pow(center + p.H, 1.0 / p.n);
    double bot = std::pow(center - p.H, 1.0 / p.n);
    wp.window_top.push_back(top);
    wp.window_len.push_back(top - bot);
  }
  wp.tau = 2.0 * (p.n - 1) * p.n * std::pow(wp.window_top.front(), p.n - 2) *
           wp.window_len.front();
  wp.log_scale = std::log(Nd);
  return wp;
}

namespace detail {

/// Exact continued-fraction scan of a rational alpha in [0,1); returns the
/// last convergent with denominator <= q_cap.
inline void best_convergent(const mpq_class& alpha, const mpz_class& q_cap,
                            mpz_class& p_out, mpz_class& q_out) {
  mpz_class num = alpha.get_num(), den = alpha.get_den();
  mpz_class p_prev = 1, q_prev = 0;  // k = -1
  mpz_class p_cur = 0, q_cur = 1;    // a_0 = 0 since alpha in [0,1)
  // num/den now holds the fractional part of alpha
  while (num != 0) {
    mpz_class digit = den / num;
    mpz_class rem = den % num;
    den = num;
    num = rem;
    mpz_class p_next = digit * p_cur + p_prev;
    mpz_class q_next = digit * q_cur + q_prev;
    if (q_next > q_cap) break;
    p_prev = p_cur; q_prev = q_cur;
    p_cur = p_next; q_cur = q_next;
  }
  p_out = p_cur;
  q_out = q_cur;
}

}  // namespace detail

/// Dirichlet approximation alpha = a/q + lambda with q <= tau and
/// |lambda| <= 1/(q tau). alpha is reduced into [-1/tau, 1-1/tau) first.
/// Exact rational entry point: deterministic near arc boundaries.
inline ArcPoint dirichlet_approx(const mpq_class& alpha_in, double tau) {
  if (!(tau >= 1.0)) throw std::invalid_argument("dirichlet_approx: need tau >= 1");
  if (tau >= 9e18) throw std::invalid_argument("dirichlet_approx: tau too large for i64 q");
  mpq_class inv_tau(1.0 / tau);
  mpq_class shifted = alpha_in + inv_tau;
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
  mpq_class alpha = alpha_in - mpq_class(k);  // in [-1/tau, 1-1/tau)
  ArcPoint arc;
  if (sgn(alpha) < 0) {
    arc = ArcPoint{0, 1, mpq_class(alpha).get_d()};
  } else {
    mpz_class q_cap(std::floor(tau));
    mpz_class p, q;
    detail::best_convergent(alpha, q_cap, p, q);
    mpq_class pq(p, q);
    pq.canonicalize();  // gcd(p,q)=1 already; keeps mpq invariants explicit
    mpq_class lam = alpha - pq;
    arc.a = static_cast<i64>(mpz_get_si(p.get_mpz_t()));
    arc.q = static_cast<i64>(mpz_get_si(q.get_mpz_t()));
    arc.lambda = lam.get_d();
  }
  // Dirichlet's theorem, asserted per call.
  if (!(static_cast<double>(arc.q) <= tau) ||
      std::fabs(arc.lambda) > 1.0 / (static_cast<double>(arc.q) * tau) * (1.0 + 1e-12))
    throw std::logic_error("dirichlet_approx: production invariant violated");
  return arc;
}

inline ArcPoint dirichlet_approx(double alpha, double tau) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("dirichlet_approx: alpha not finite");
  return dirichlet_approx(mpq_class(alpha), tau);  // doubles are exact dyadic rationals
}

enum class ArcLabel { M1, M2, Minor };

inline const char* to_string(ArcLabel l) {
  switch (l) {
    case ArcLabel::M1: return "M1";
    case ArcLabel::M2: return "M2";
    default: return "minor";
  }
}

/// M1: small neighborhood of a major-arc center (ties |lambda| = eta_q land
/// here, matching the closed interval). M2: rest of the major arc. Minor: all
/// other points.
inline ArcLabel classify(const ArcPoint& arc, const WindowParams& wp) {
  double q = static_cast<double>(arc.q);
  double al = std::fabs(arc.lambda);
  if (q <= wp.major_q_limit()) {
    if (al <= wp.eta_q(arc.q)) return ArcLabel::M1;
    if (al <= 1.0 / (q * wp.tau)) return ArcLabel::M2;
  }
  return ArcLabel::Minor;
}

}  // namespace waring::arcs
