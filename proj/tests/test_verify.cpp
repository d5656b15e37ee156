#include "waring/verify.hpp"

#include <gtest/gtest.h>

using namespace waring;

TEST(Theta, PaperTableValues) {
  EXPECT_EQ(verify::theta(3, 9).get_str(), "1/30");
  EXPECT_EQ(verify::theta(4, 17).get_str(), "1/108");
  EXPECT_EQ(verify::theta(5, 33).get_str(), "1/340");
  EXPECT_EQ(verify::theta(10, 1025).get_str(), "1/46170");
}

TEST(WrightTheta, TableValues) {
  EXPECT_EQ(verify::wright_theta(3, 9).get_str(), "1/51");
  EXPECT_EQ(verify::wright_theta(4, 21).get_str(), "1/100");
  EXPECT_EQ(verify::wright_theta(5, 53).get_str(), "1/325");
  // n=8: the minimum branch is 1/897, scaled by 1/n
  EXPECT_EQ(verify::wright_theta(8, 773).get_str(), "1/7176");
}

TEST(WrightTheta, RejectsBelowAdmissibleRange) {
  EXPECT_THROW(verify::wright_theta(4, 17), std::invalid_argument);  // needs r >= 21
}

TEST(PredictMainTerm, EqualWeightsReduction) {
  // prod mu^{-1+1/n} = r^{r - r/n} for mu_i = 1/r: the equal-weights
  // coefficient collapses to 2^r r^{r-r/n} gamma / n^r
  auto p = ProblemInstance::equal_weights(3, 9, 1000000, 10000.0);
  singular::SeriesTable table(3, 9, 50);
  auto pred = verify::predict_main_term(p, 50, &table);
  double gamma = oscillatory::gamma_constant(9).real_value;
  double lhs = std::log(pred.value / pred.singular_value);
  double rhs = 9 * std::log(2.0) + (9.0 - 3.0) * std::log(9.0) + std::log(gamma) -
               9 * std::log(3.0) + 8 * std::log(p.H) - 6.0 * std::log(1e6);
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::fabs(rhs));
}

TEST(PredictMainTerm, DoublingHScalesByPowerOfTwo) {
  singular::SeriesTable table(3, 9, 50);
  auto p1 = ProblemInstance::equal_weights(3, 9, 1000000, 5000.0);
  auto p2 = ProblemInstance::equal_weights(3, 9, 1000000, 10000.0);
  double v1 = verify::predict_main_term(p1, 50, &table).value;
  double v2 = verify::predict_main_term(p2, 50, &table).value;
  EXPECT_NEAR(v2 / v1, 256.0, 1e-9);  // 2^{r-1}
}

TEST(ResidualScan, VanishesAtZeroArc) {
  // q = 1, lambda = 0: T = y = (y/1) S(0,1) gamma(0)
  WindowSpec w{3, 10000, 100};
  cplx T = weyl::short_weyl_sum(w, ArcPoint{0, 1, 0.0});
  cplx S = exp_sums::complete_sum({3, 0, 1, 0});
  cplx g = oscillatory::gamma_integral(w, 0.0);
  EXPECT_NEAR(std::abs(T - 100.0 * S * g), 0.0, 1e-9);
}

TEST(ResidualScan, SamplesAreAdmissible) {
  auto rows = verify::major_arc_residual_scan(3, {1000, 10000}, 2, 50, 60, 99);
  ASSERT_EQ(rows.size(), 60u);
  for (const auto& s : rows) {
    EXPECT_GE(s.q, 2);
    EXPECT_LE(s.q, 50);
    EXPECT_EQ(std::gcd(s.a, s.q), 1);
    double eta = 1.0 / (2.0 * 3 * static_cast<double>(s.q) * static_cast<double>(s.x) *
                        static_cast<double>(s.x));
    EXPECT_LE(std::fabs(s.lambda), eta);
    EXPECT_GE(s.residual, 0.0);
    EXPECT_NEAR(s.normalized, s.residual / std::pow(static_cast<double>(s.q), 0.6), 1e-12);
  }
}

TEST(ResidualScan, SingleKnownPoint) {
  // n=3, x=1e4, y=1e2, q=7: the expansion should track T to O(q^{1/2+eps})
  WindowSpec w{3, 10000, 100};
  i64 q = 7, a = 3;
  double lambda = 0.9 / (2.0 * 3 * static_cast<double>(q) * 1e8);
  cplx T = weyl::short_weyl_sum(w, ArcPoint{a, q, lambda});
  cplx S = exp_sums::complete_sum({3, a, q, 0});
  cplx g = oscillatory::gamma_integral(w, lambda);
  double residual = std::abs(T - (100.0 / 7.0) * S * g);
  EXPECT_LT(residual, 40.0);  // a few q^{1/2}, far below |T| <= y = 100
}

TEST(MinorArcSweep, LabelsAndBound) {
  auto rows = verify::minor_arc_sweep(3, 10000, 100, 40, 7);
  int minor = 0;
  for (const auto& row : rows) {
    if (row.label == arcs::ArcLabel::Minor) {
      ++minor;
      EXPECT_GT(row.minor_bound, 0.0);
      EXPECT_LE(row.t_abs, row.minor_bound);
    }
    if (row.label == arcs::ArcLabel::M2) EXPECT_GT(row.expansion_bound, 0.0);
  }
  EXPECT_EQ(minor, 40);
}

TEST(EndToEnd, TrivialInstanceRow) {
  std::vector<double> mu(9, 1.0 / 9.0);
  auto rep = verify::end_to_end_report(3, {9}, 0.8156, mu, 20);  // H = 9^0.8156 ~ 6.0
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].j_exact, mpz_class(1));
  EXPECT_GT(rep.rows[0].j_predicted, 0.0);
}

TEST(EndToEnd, PermutedWeightsSameCount) {
  std::vector<double> mu{0.2, 0.05, 0.15, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
  auto rep1 = verify::end_to_end_report(3, {200000}, 0.9, mu, 30);
  std::rotate(mu.begin(), mu.begin() + 3, mu.end());
  auto rep2 = verify::end_to_end_report(3, {200000}, 0.9, mu, 30);
  EXPECT_EQ(rep1.rows[0].j_exact, rep2.rows[0].j_exact);
}

TEST(CentralArcMainTerm, TracksExactCount) {
  // the desk-scale main term should land within a few percent of J
  std::vector<double> mu(9, 1.0 / 9.0);
  auto rep = verify::end_to_end_report(3, {100000}, 0.97, mu, 300);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_GT(rep.rows[0].ratio, 0.9);
  EXPECT_LT(rep.rows[0].ratio, 1.1);
}
