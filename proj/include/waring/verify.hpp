#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "waring/arcs.hpp"
#include "waring/counting.hpp"
#include "waring/exp_sums.hpp"
#include "waring/numeric.hpp"
#include "waring/oscillatory.hpp"
#include "waring/singular_series.hpp"
#include "waring/types.hpp"
#include "waring/weyl_sums.hpp"

namespace waring::verify {

/// Localization exponent 2/((r+1)(n^2-n)).
inline mpq_class theta(int n, int r) {
  if (n < 3) throw std::invalid_argument("theta: need n >= 3");
  if (r < 2) throw std::invalid_argument("theta: need r >= 2");
  mpq_class t(2, static_cast<long>(r + 1) * (static_cast<long>(n) * n - n));
  t.canonicalize();
  return t;
}

/// Wright's exponent: 1/n times the minimum of the three branch values; only
/// defined for r >= (n-2) 2^{n-1} + 5.
inline mpq_class wright_theta(int n, int r) {
  if (n < 3) throw std::invalid_argument("wright_theta: need n >= 3");
  mpz_class pow_n = mpz_class(1) << n;            // 2^n
  mpz_class pow_n1 = mpz_class(1) << (n - 1);     // 2^{n-1}
  mpz_class r_min = mpz_class(n - 2) * pow_n1 + 5;
  if (mpz_class(r) < r_min)
    throw std::invalid_argument("wright_theta: r below Wright's admissible range");
  mpz_class rz(r), nz(n);
  mpq_class b1(mpq_class((rz - pow_n) * (pow_n1 + 1)) /
               mpq_class((nz * rz + nz - pow_n - 3) * pow_n1 + rz));
  mpq_class b2(mpq_class(rz - (nz - 2) * pow_n1 - 4) / mpq_class(rz + pow_n1 - 4));
  mpq_class b3(mpq_class(rz - pow_n1) / mpq_class(nz * rz - pow_n1 + nz - 1));
  mpq_class m = std::min(std::min(b1, b2), b3);
  m /= n;
  m.canonicalize();
  return m;
}

/// Asymptotic closed form of the main term:
/// (2^r gamma(n,r)/n^r) prod mu_i^{-1+1/n} S(N,Q) H^{r-1} / N^{r-r/n}.
/// Evaluated in log space; the gamma constant is exact and the truncated
/// singular series carries its tail estimate.
struct MainTermPrediction {
  double value = 0.0;
  double singular_value = 0.0;
  double singular_tail = 0.0;
};

inline MainTermPrediction predict_main_term(const ProblemInstance& p, i64 Q,
                                            const singular::SeriesTable* table = nullptr) {
  p.validate();
  auto gamma = oscillatory::gamma_constant(static_cast<unsigned>(p.r));
  singular::SeriesValue S = table ? singular::singular_series(*table, p.N, Q)
                                  : singular::singular_series(p.n, p.r, p.N, Q);
  double log_pred = p.r * std::log(2.0) + std::log(gamma.real_value) - p.r * std::log(p.n);
  for (double m : p.mu) log_pred += (-1.0 + 1.0 / p.n) * std::log(m);
  log_pred += (p.r - 1) * std::log(p.H);
  log_pred -= (p.r - static_cast<double>(p.r) / p.n) * std::log(static_cast<double>(p.N));
  MainTermPrediction out;
  out.singular_value = S.value;
  out.singular_tail = S.tail_estimate;
  out.value = S.value > 0.0 ? std::exp(log_pred) * S.value : -std::exp(log_pred) * (-S.value);
  return out;
}

/// Central-arc main term evaluated at desk scale: sum over q <= Q of
/// A(q,N) int_{|lambda|<=eta_q} prod_i T_i(lambda) e(-lambda N) dlambda, with
/// T_i the oscillatory integral over window i widened by the half-integer
/// midpoint convention. This is the quantity the exact count is compared
/// against; the asymptotic collapse of it is predict_main_term.
inline double central_arc_main_term(const ProblemInstance& p, const singular::SeriesTable& table,
                                    i64 Q) {
  p.validate();
  std::vector<double> lo, hi;
  for (int i = 0; i < p.r; ++i) {
    auto range = counting::power_window_range(
        p.n, p.mu[static_cast<std::size_t>(i)] * static_cast<double>(p.N), p.H);
    if (range.size() == 0) return 0.0;
    lo.push_back(static_cast<double>(range.lo) - 0.5);
    hi.push_back(static_cast<double>(range.hi) + 0.5);
  }
  double mu_max = *std::max_element(p.mu.begin(), p.mu.end());
  double top = std::pow(mu_max * static_cast<double>(p.N) + p.H, 1.0 / p.n);
  double eta1 = 1.0 / (2.0 * p.n * dpow(top, static_cast<unsigned>(p.n - 1)));
  // integrand resolution: at least ~50 samples per e(-lambda N) oscillation
  i64 steps = std::max<i64>(3000, static_cast<i64>(50.0 * eta1 * static_cast<double>(p.N)));
  steps = std::min<i64>(steps, 200000);
  double h = eta1 / static_cast<double>(steps);
  std::vector<double> G(static_cast<std::size_t>(steps) + 1, 0.0);
  auto integrand = [&](double lam) {
    cplx prod{1.0, 0.0};
    for (int i = 0; i < p.r; ++i) {
      std::size_t k = static_cast<std::size_t>(i);
      prod *= (hi[k] - lo[k]) * oscillatory::gamma_integral(p.n, hi[k], hi[k] - lo[k], lam);
    }
    double g = lam * static_cast<double>(p.N);
    return (prod * std::conj(unit_phase(g - std::floor(g)))).real();
  };
  double prev = integrand(0.0);
  for (i64 s = 1; s <= steps; ++s) {
    double cur = integrand(static_cast<double>(s) * h);
    G[static_cast<std::size_t>(s)] = G[static_cast<std::size_t>(s - 1)] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  double total = 0.0;
  for (i64 q = 1; q <= Q; ++q) {
    double eta_q = eta1 / static_cast<double>(q);
    double idx = eta_q / h;
    i64 i0 = static_cast<i64>(idx);
    double Gq = (i0 >= steps)
                    ? G[static_cast<std::size_t>(steps)]
                    : G[static_cast<std::size_t>(i0)] +
                          (idx - static_cast<double>(i0)) *
                              (G[static_cast<std::size_t>(i0 + 1)] - G[static_cast<std::size_t>(i0)]);
    total += table.local_sum(q, p.N).value.real() * 2.0 * Gq;
  }
  return total;
}

/// One sampled point of the major-arc residual scan.
struct ResidualSample {
  int n = 3;
  i64 x = 0, y = 0, q = 1, a = 0;
  double lambda = 0.0;
  double residual = 0.0;    // |T - (y/q) S gamma|
  double normalized = 0.0;  // residual / q^{0.6}
};

/// Samples admissible (a,q,lambda) per the major-arc expansion hypotheses
/// (|lambda| <= 1/(2 n q x^{n-1})) and records the expansion residual.
inline std::vector<ResidualSample> major_arc_residual_scan(int n, const std::vector<i64>& x_grid,
                                                           i64 q_lo, i64 q_hi, int samples,
                                                           u64 seed) {
  if (q_lo < 1 || q_hi < q_lo) throw std::invalid_argument("residual scan: bad q range");
  std::mt19937_64 rng(seed);
  std::vector<ResidualSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  std::uniform_real_distribution<double> unif(-0.95, 0.95);
  for (int s = 0; s < samples; ++s) {
    ResidualSample row;
    row.n = n;
    row.x = x_grid[rng() % x_grid.size()];
    row.y = static_cast<i64>(std::pow(static_cast<double>(row.x), 0.6));
    row.q = q_lo + static_cast<i64>(rng() % static_cast<u64>(q_hi - q_lo + 1));
    do {
      row.a = static_cast<i64>(rng() % static_cast<u64>(row.q));
    } while (std::gcd(row.a, row.q) != 1);
    if (row.q == 1) row.a = 0;
    double eta = 1.0 / (2.0 * n * static_cast<double>(row.q) *
                        dpow(static_cast<double>(row.x), static_cast<unsigned>(n - 1)));
    row.lambda = unif(rng) * eta;
    WindowSpec w{n, row.x, row.y};
    cplx T = weyl::short_weyl_sum(w, ArcPoint{row.a, row.q, row.lambda});
    cplx S = exp_sums::complete_sum({n, row.a, row.q, 0});
    cplx g = oscillatory::gamma_integral(w, row.lambda);
    cplx main = (static_cast<double>(row.y) / static_cast<double>(row.q)) * S * g;
    row.residual = std::abs(T - main);
    row.normalized = row.residual / std::pow(static_cast<double>(row.q), 0.6);
    out.push_back(row);
  }
  return out;
}

/// One sampled point of the minor-arc sweep.
struct SweepSample {
  double alpha = 0.0;
  ArcPoint arc;
  arcs::ArcLabel label = arcs::ArcLabel::Minor;
  double t_abs = 0.0;
  double minor_bound = 0.0;     // divisor-sieve minor-arc bound (minor points)
  double expansion_bound = 0.0; // q^{1-1/n} ln q + min(y q^{-1/n}, x^{1/2} q^{1/2-1/n}) (M2 points)
};

/// Classifies random alpha for the synthetic instance whose r-th window is
/// exactly (x-y, x] and records |T| against the applicable bound.
inline std::vector<SweepSample> minor_arc_sweep(int n, i64 x, i64 y, int minor_samples,
                                                u64 seed) {
  WindowSpec w{n, x, y};
  w.validate();
  int r = ProblemInstance::default_r(n);
  double xn = dpow(static_cast<double>(x), static_cast<unsigned>(n));
  double xyn = dpow(static_cast<double>(x - y), static_cast<unsigned>(n));
  ProblemInstance p = ProblemInstance::equal_weights(
      n, r, static_cast<i64>(r * (xn + xyn) / 2.0), (xn - xyn) / 2.0);
  auto wp = arcs::window_params(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<SweepSample> out;
  int kept_minor = 0;
  while (kept_minor < minor_samples) {
    SweepSample row;
    row.alpha = -1.0 / wp.tau + unif(rng);
    row.arc = arcs::dirichlet_approx(row.alpha, wp.tau);
    row.label = arcs::classify(row.arc, wp);
    row.t_abs = std::abs(weyl::short_weyl_sum(w, row.arc));
    double q = static_cast<double>(row.arc.q);
    if (row.label == arcs::ArcLabel::Minor) {
      row.minor_bound = weyl::minor_arc_bound(w, row.arc).bound;
      ++kept_minor;
    } else if (row.label == arcs::ArcLabel::M2) {
      row.expansion_bound =
          std::pow(q, 1.0 - 1.0 / n) * std::log(std::max(q, 2.0)) +
          std::min(static_cast<double>(y) * std::pow(q, -1.0 / n),
                   std::sqrt(static_cast<double>(x)) * std::pow(q, 0.5 - 1.0 / n));
    }
    out.push_back(row);
  }
  return out;
}

/// One row of the end-to-end comparison.
struct CountRow {
  i64 N = 0;
  double H = 0.0;
  mpz_class j_exact;
  double j_predicted = 0.0;      // central-arc main term
  double ratio = 0.0;            // j_exact / j_predicted
  double singular_value = 0.0;
  double singular_tail = 0.0;    // uncertainty carried from the truncation
  double runtime_s = 0.0;
};

struct CountReport {
  int n = 3;
  int r = 9;
  double h_exponent = 0.97;
  i64 Q = 1000;
  std::vector<CountRow> rows;
};

/// Exact count vs the central-arc main term for each N; H = N^h_exponent.
inline CountReport end_to_end_report(int n, const std::vector<i64>& N_list, double h_exponent,
                                     const std::vector<double>& mu, i64 Q,
                                     std::size_t mem_budget_mb = 2048) {
  CountReport rep;
  rep.n = n;
  rep.r = static_cast<int>(mu.size());
  rep.h_exponent = h_exponent;
  rep.Q = Q;
  singular::SeriesTable table(n, rep.r, Q);
  for (i64 N : N_list) {
    auto t0 = std::chrono::steady_clock::now();
    CountRow row;
    row.N = N;
    row.H = std::pow(static_cast<double>(N), h_exponent);
    ProblemInstance p;
    p.n = n;
    p.r = rep.r;
    p.N = N;
    p.H = row.H;
    p.mu = mu;
    row.j_exact = counting::count_representations(p, mem_budget_mb);
    auto S = singular::singular_series(table, N, Q);
    row.singular_value = S.value;
    row.singular_tail = S.tail_estimate;
    row.j_predicted = central_arc_main_term(p, table, Q);
    row.ratio = row.j_predicted != 0.0
                    ? mpz_get_d(row.j_exact.get_mpz_t()) / row.j_predicted
                    : std::numeric_limits<double>::quiet_NaN();
    row.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace waring::verify
