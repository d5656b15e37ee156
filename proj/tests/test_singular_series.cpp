#include "waring/singular_series.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace waring;
using singular::local_sum;
using singular::multiplicativity_check;
using singular::SeriesTable;
using singular::singular_series;

TEST(LocalSum, ModulusOne) {
  auto a = local_sum(3, 9, 1, 12345);
  EXPECT_NEAR(a.value.real(), 1.0, 1e-15);
  EXPECT_NEAR(a.value.imag(), 0.0, 1e-15);
}

TEST(LocalSum, VanishesWhenCompleteSumDoes) {
  // S(1,2) = 0, so the only coprime term of A(2,N) vanishes
  for (i64 N : {1, 5, 100, 12345}) EXPECT_NEAR(std::abs(local_sum(3, 9, 2, N).value), 0.0, 1e-14);
}

TEST(LocalSum, NineNineDerivedValue) {
  // direct double summation oracle
  auto inner = [&](i64 a, i64 q) {
    cplx s{0.0, 0.0};
    for (i64 k = 1; k <= q; ++k)
      s += unit_phase(static_cast<double>((a * k * k * k) % q) / static_cast<double>(q));
    return s;
  };
  i64 q = 9, N = 9;
  cplx oracle{0.0, 0.0};
  for (i64 a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    cplx z = inner(a, q) / static_cast<double>(q);
    cplx zp{1.0, 0.0};
    for (int i = 0; i < 9; ++i) zp *= z;
    oracle += zp * unit_phase(static_cast<double>((q - (a * N) % q) % q) / static_cast<double>(q));
  }
  EXPECT_NEAR(std::abs(local_sum(3, 9, 9, 9).value - oracle), 0.0, 1e-12);
  EXPECT_GT(std::abs(oracle), 1e-6);  // a genuinely nonzero factor
}

TEST(LocalSum, ImaginaryPartNegligible) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    i64 q = 1 + static_cast<i64>(rng() % 200);
    i64 N = 1 + static_cast<i64>(rng() % 10000000);
    auto a = local_sum(3, 9, q, N);
    EXPECT_LE(std::fabs(a.value.imag()), 1e-9 * (1.0 + std::abs(a.value)));
  }
}

TEST(LocalSum, DecayEnvelope) {
  // |A(q)| <= phi(q) (c q^{-1/n})^r with c fitted from the complete-sum scan
  double c = 0.0;
  for (i64 q = 1; q <= 200; ++q) c = std::max(c, exp_sums::weyl_complete_ratio(3, q));
  for (i64 q = 1; q <= 200; ++q) {
    double phi = 0.0;
    for (i64 a = 0; a < q; ++a)
      if (std::gcd(a == 0 ? q : a, q) == 1) phi += 1.0;
    double envelope = phi * std::pow(c * std::pow(static_cast<double>(q), -1.0 / 3.0), 9);
    EXPECT_LE(std::abs(local_sum(3, 9, q, 123457).value), envelope * (1 + 1e-9)) << q;
  }
}

TEST(SeriesTable, MatchesDirectEvaluation) {
  SeriesTable table(3, 9, 50);
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    i64 q = 1 + static_cast<i64>(rng() % 50);
    i64 N = 1 + static_cast<i64>(rng() % 999983);
    EXPECT_NEAR(std::abs(table.local_sum(q, N).value - local_sum(3, 9, q, N).value), 0.0, 1e-12);
  }
}

TEST(SingularSeries, TruncationAtOne) {
  auto s = singular_series(3, 9, 999, 1);
  EXPECT_NEAR(s.value, 1.0, 1e-14);
  EXPECT_FALSE(s.tail_divergent_warning);
}

TEST(SingularSeries, DoublingWithinTail) {
  SeriesTable table(3, 9, 1000);
  for (i64 N : {100003, 1000000, 7777777}) {
    for (i64 Q : {250, 500}) {
      auto sQ = singular_series(table, N, Q);
      auto s2Q = singular_series(table, N, 2 * Q);
      EXPECT_LE(std::fabs(s2Q.value - sQ.value), sQ.tail_estimate)
          << "N=" << N << " Q=" << Q;
    }
  }
}

TEST(SingularSeries, PositiveOnSample) {
  SeriesTable table(3, 9, 1000);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    i64 N = 10000 + static_cast<i64>(rng() % 10000000);
    EXPECT_GT(singular_series(table, N, 1000).value, 0.0) << "N=" << N;
  }
}

TEST(SingularSeries, DivergenceWarning) {
  auto s = singular_series(4, 8, 999, 10);  // r/n = 2: tail model diverges
  EXPECT_TRUE(s.tail_divergent_warning);
}

TEST(Multiplicativity, TrivialAndDerived) {
  EXPECT_NEAR(multiplicativity_check(3, 9, 999, 1, 17), 0.0, 1e-12);
  EXPECT_NEAR(multiplicativity_check(3, 9, 9, 2, 3), 0.0, 1e-10);
  EXPECT_LT(multiplicativity_check(3, 9, 9, 9, 5), 1e-8);
}

TEST(Multiplicativity, RandomCoprimePairs) {
  std::mt19937_64 rng(24);
  int done = 0;
  while (done < 30) {
    i64 q1 = 2 + static_cast<i64>(rng() % 30);
    i64 q2 = 2 + static_cast<i64>(rng() % 40);
    if (std::gcd(q1, q2) != 1) continue;
    i64 N = 1 + static_cast<i64>(rng() % 100000);
    EXPECT_LT(multiplicativity_check(3, 9, N, q1, q2), 1e-8) << q1 << "," << q2;
    ++done;
  }
}

TEST(Multiplicativity, RejectsNonCoprime) {
  EXPECT_THROW(multiplicativity_check(3, 9, 10, 4, 6), std::invalid_argument);
}
