#include "waring/weyl_sums.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "waring/exp_sums.hpp"

using namespace waring;
using weyl::difference_poly;
using weyl::minor_arc_bound;
using weyl::short_weyl_sum;
using weyl::weyl_differencing_check;

TEST(ShortWeylSum, ZeroArcCountsWindow) {
  for (i64 y : {1, 7, 100}) {
    WindowSpec w{3, 2 * y, y};
    cplx t = short_weyl_sum(w, ArcPoint{0, 1, 0.0});
    EXPECT_NEAR(std::abs(t - cplx{static_cast<double>(y), 0.0}), 0.0, 1e-12);
  }
}

TEST(ShortWeylSum, AlternatingCancellation) {
  // e(m^3/2) = (-1)^m over ten consecutive terms
  cplx t = short_weyl_sum(WindowSpec{3, 10, 10}, ArcPoint{1, 2, 0.0});
  EXPECT_NEAR(std::abs(t), 0.0, 1e-13);
}

TEST(ShortWeylSum, ExactRationalPhaseOracle) {
  // every phase reduced exactly in mpq arithmetic
  WindowSpec w{3, 100, 50};
  ArcPoint arc{1, 3, 1e-9};
  mpq_class lam(1e-9);  // the double is a dyadic rational; conversion is exact
  cplx oracle{0.0, 0.0};
  for (i64 m = w.x - w.y + 1; m <= w.x; ++m) {
    mpz_class m3 = mpz_class(m) * m * m;
    mpq_class phase = mpq_class(arc.a * m3, arc.q) + lam * m3;
    mpz_class whole = phase.get_num() / phase.get_den();
    phase -= whole;
    oracle += unit_phase(phase.get_d());
  }
  cplx impl = short_weyl_sum(w, arc);
  EXPECT_NEAR(std::abs(impl - oracle), 0.0, 1e-9);
}

TEST(ShortWeylSum, PeriodicityAndConjugation) {
  WindowSpec w{3, 300, 120};
  double alpha = 390625.0 / 1048576.0;  // few mantissa bits: alpha+1 stays exact
  cplx base = short_weyl_sum(w, alpha);
  EXPECT_NEAR(std::abs(short_weyl_sum(w, alpha + 1.0) - base), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(short_weyl_sum(w, -alpha) - std::conj(base)), 0.0, 1e-12);
}

TEST(ShortWeylSum, MagnitudeAtMostY) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    i64 x = 50 + static_cast<i64>(rng() % 5000);
    i64 y = 1 + static_cast<i64>(rng() % static_cast<u64>(x));
    int n = 3 + static_cast<int>(rng() % 3);
    double abs_t = std::abs(short_weyl_sum(WindowSpec{n, x, y}, ua(rng)));
    EXPECT_LE(abs_t, static_cast<double>(y) * (1 + 1e-12));
  }
}

TEST(ShortWeylSum, WideValuesUse128BitPath) {
  // n=4 at x=1e5 pushes m^n to ~1e20 > 2^64
  WindowSpec w{4, 100000, 50};
  cplx t = short_weyl_sum(w, ArcPoint{1, 7, 1e-18});
  EXPECT_LE(std::abs(t), 50.0 * (1 + 1e-12));
  cplx t0 = short_weyl_sum(w, ArcPoint{0, 1, 0.0});
  EXPECT_NEAR(std::abs(t0 - cplx{50.0, 0.0}), 0.0, 1e-12);
}

TEST(TwistedSum, DecompositionIdentity) {
  // T(alpha; x, y) = (1/q) sum_b T_b(lambda; x, y) S_b(a, q)
  WindowSpec w{3, 60, 25};
  for (i64 q : {3, 4, 5, 7}) {
    for (i64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      double lambda = 7.3e-6;
      cplx direct = short_weyl_sum(w, ArcPoint{a, q, lambda});
      cplx assembled{0.0, 0.0};
      for (i64 b = 0; b < q; ++b)
        assembled += weyl::twisted_weyl_sum(w, lambda, b, q) *
                     exp_sums::complete_sum({3, a, q, b});
      assembled /= static_cast<double>(q);
      EXPECT_NEAR(std::abs(direct - assembled), 0.0, 1e-9) << "a/q=" << a << "/" << q;
    }
  }
}

TEST(DifferencePoly, KnownExpansions) {
  auto g1 = difference_poly(3, {1});
  ASSERT_EQ(g1.coeffs.size(), 3u);  // 3u^2 + 3u + 1
  EXPECT_EQ(g1.coeffs[0], 1);
  EXPECT_EQ(g1.coeffs[1], 3);
  EXPECT_EQ(g1.coeffs[2], 3);

  auto g2 = difference_poly(3, {1, 1});
  ASSERT_EQ(g2.coeffs.size(), 2u);  // 6u + 6
  EXPECT_EQ(g2.coeffs[0], 6);
  EXPECT_EQ(g2.coeffs[1], 6);

  auto g42 = difference_poly(4, {1, 2});
  ASSERT_EQ(g42.coeffs.size(), 3u);  // 12u^2 + 36u + 32
  EXPECT_EQ(g42.coeffs[0], 32);
  EXPECT_EQ(g42.coeffs[1], 36);
  EXPECT_EQ(g42.coeffs[2], 12);
}

TEST(DifferencePoly, LeadingCoefficient) {
  std::mt19937_64 rng(9);
  for (int n = 3; n <= 10; ++n) {
    for (int k = 1; k <= n - 1; ++k) {
      std::vector<i64> shifts;
      for (int i = 0; i < k; ++i) {
        i64 h = static_cast<i64>(rng() % 9) - 4;
        if (h == 0) h = 1;
        shifts.push_back(h);
      }
      auto g = difference_poly(n, shifts);
      mpz_class expected = 1;
      for (int j = 0; j < k; ++j) expected *= n - j;
      EXPECT_EQ(g.leading(), expected) << "n=" << n << " k=" << k;
      EXPECT_EQ(static_cast<int>(g.coeffs.size()), n - k + 1);
    }
  }
}

TEST(DifferencePoly, FactorizationIdentity) {
  // repeated forward differencing of u^n equals h_1...h_k g_k(u) exactly
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 3 + static_cast<int>(rng() % 5);
    int k = 1 + static_cast<int>(rng() % static_cast<u64>(n - 1));
    std::vector<i64> shifts;
    for (int i = 0; i < k; ++i) {
      i64 h = static_cast<i64>(rng() % 13) - 6;
      if (h == 0) h = -3;
      shifts.push_back(h);
    }
    auto g = difference_poly(n, shifts);
    mpz_class hprod = 1;
    for (i64 h : shifts) hprod *= h;
    i64 u = static_cast<i64>(rng() % 200) - 100;
    // independent route: recursive forward differencing in mpz
    std::function<mpz_class(int, i64)> delta = [&](int depth, i64 at) -> mpz_class {
      if (depth == 0) {
        mpz_class acc = 1;
        for (int j = 0; j < n; ++j) acc *= at;
        return acc;
      }
      return delta(depth - 1, at + shifts[static_cast<std::size_t>(depth - 1)]) -
             delta(depth - 1, at);
    };
    EXPECT_EQ(delta(k, u), hprod * g.eval(mpz_class(u)));
  }
}

TEST(DifferencePoly, RejectsBadInput) {
  EXPECT_THROW(difference_poly(3, {1, 1, 1}), std::invalid_argument);  // k >= n
  EXPECT_THROW(difference_poly(3, {}), std::invalid_argument);
  EXPECT_THROW(difference_poly(4, {1, 0}), std::invalid_argument);
}

TEST(DifferencingCheck, ZeroPhaseBaseCase) {
  auto chk = weyl_differencing_check(WindowSpec{3, 16, 8}, 0.0, 1);
  EXPECT_NEAR(chk.lhs, 64.0, 1e-9);
  EXPECT_NEAR(chk.rhs, 64.0, 1e-6);
  EXPECT_LE(chk.lhs, chk.rhs * (1 + 1e-9));
}

TEST(DifferencingCheck, DerivedCases) {
  auto c1 = weyl_differencing_check(WindowSpec{3, 50, 16}, std::sqrt(2.0) - 1.0, 2);
  EXPECT_LE(c1.lhs, c1.rhs * (1 + 1e-9));
  auto c2 = weyl_differencing_check(WindowSpec{4, 64, 16}, 0.3, 3);
  EXPECT_LE(c2.lhs, c2.rhs * (1 + 1e-9));
}

TEST(DifferencingCheck, RandomizedTrials) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    int n = 3 + static_cast<int>(rng() % 3);
    int k = 1 + static_cast<int>(rng() % static_cast<u64>(std::min(3, n - 1)));
    i64 y = 2 + static_cast<i64>(rng() % 31);
    i64 x = y + static_cast<i64>(rng() % 1000);
    auto chk = weyl_differencing_check(WindowSpec{n, x, y}, ua(rng), k);
    ASSERT_LE(chk.lhs, chk.rhs * (1 + 1e-9)) << "n=" << n << " k=" << k << " y=" << y;
  }
}

TEST(DifferencingCheck, CapEnforced) {
  EXPECT_THROW(weyl_differencing_check(WindowSpec{3, 2000, 1000}, 0.5, 1, 512),
               std::invalid_argument);
}

TEST(DivisorSieve, SmallValues) {
  EXPECT_EQ(weyl::divisor_max_below(2), 1u);
  EXPECT_EQ(weyl::divisor_max_below(10), 4u);    // tau(6) = tau(8) = 4
  EXPECT_EQ(weyl::divisor_max_below(100), 12u);  // tau(60) = tau(96) = 12
}

TEST(MinorArcBound, FormulaValue) {
  WindowSpec w{3, 10000, 100};
  ArcPoint arc{1, 97, 0.0};
  auto mb = minor_arc_bound(w, arc);
  // independent recomputation with a trial-division divisor maximum
  u64 tau_max = 0;
  for (u64 h = 1; h < 10000; ++h) {
    u64 d = 0;
    for (u64 i = 1; i * i <= h; ++i)
      if (h % i == 0) d += (i * i == h) ? 1 : 2;
    tau_max = std::max(tau_max, d);
  }
  double q = 97.0, y = 100.0;
  double paren = 4.0 * 6.0 * (1.0 / q + 1.0 / y + q * std::log(q) / (y * y * y)) *
                 static_cast<double>(tau_max);
  double expect = 2.0 * y * std::pow(paren, 0.25);
  EXPECT_NEAR(mb.bound, expect, 1e-9);
  EXPECT_FALSE(mb.divisor_bound_substituted);
  EXPECT_TRUE(mb.hypothesis_ok);
}

TEST(MinorArcBound, TrivialAtQOne) {
  WindowSpec w{3, 100000, 500};
  auto mb = minor_arc_bound(w, ArcPoint{0, 1, 0.0});
  EXPECT_GT(mb.bound, 2.0 * 500.0);
}

TEST(MinorArcBound, DominatesSampledSums) {
  // golden-ratio convergents give |alpha - a/q| <= 1/q^2
  WindowSpec w{3, 10000, 100};
  double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  struct Conv { i64 a, q; };
  for (Conv c : {Conv{34, 55}, Conv{55, 89}, Conv{89, 144}, Conv{144, 233}}) {
    ArcPoint arc{c.a, c.q, phi - static_cast<double>(c.a) / static_cast<double>(c.q)};
    double t_abs = std::abs(short_weyl_sum(w, arc));
    auto mb = minor_arc_bound(w, arc);
    EXPECT_TRUE(mb.hypothesis_ok);
    EXPECT_GE(mb.bound, t_abs);
  }
}

TEST(MinorArcBound, SubstitutesAboveSieveCap) {
  WindowSpec w{3, 10000, 100};
  auto mb = minor_arc_bound(w, ArcPoint{1, 97, 0.0}, 100);  // cap below y^2
  EXPECT_TRUE(mb.divisor_bound_substituted);
  EXPECT_GT(mb.bound, 0.0);
}
