#include "waring/arcs.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace waring;
using arcs::ArcLabel;
using arcs::classify;
using arcs::dirichlet_approx;
using arcs::window_params;

TEST(DirichletApprox, SimpleRationals) {
  auto arc = dirichlet_approx(0.5, 10.0);
  EXPECT_EQ(arc.a, 1);
  EXPECT_EQ(arc.q, 2);
  EXPECT_EQ(arc.lambda, 0.0);

  auto whole = dirichlet_approx(3.0, 5.0);
  EXPECT_EQ(whole.a, 0);
  EXPECT_EQ(whole.q, 1);
  EXPECT_EQ(whole.lambda, 0.0);
}

TEST(DirichletApprox, PiFraction) {
  auto arc = dirichlet_approx(std::numbers::pi - 3.0, 100.0);
  EXPECT_EQ(arc.a, 1);
  EXPECT_EQ(arc.q, 7);
  EXPECT_NEAR(arc.lambda, std::numbers::pi - 3.0 - 1.0 / 7.0, 1e-15);
  EXPECT_LE(std::fabs(arc.lambda), 1.0 / 700.0);
}

TEST(DirichletApprox, ProductionInvariants) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    double tau = 1.0 + ua(rng) * 1e6;
    double alpha = -1.0 / tau + ua(rng);
    auto arc = dirichlet_approx(alpha, tau);
    ASSERT_GE(arc.q, 1);
    ASSERT_LE(static_cast<double>(arc.q), tau);
    ASSERT_GE(arc.a, 0);
    ASSERT_LT(arc.a, std::max<i64>(arc.q, 1));
    if (arc.a == 0) ASSERT_EQ(arc.q, 1);
    ASSERT_EQ(std::gcd(arc.a, arc.q), 1);
    ASSERT_LE(std::fabs(arc.lambda), 1.0 / (static_cast<double>(arc.q) * tau) * (1 + 1e-12));
    // the decomposition reconstructs alpha modulo 1
    double recon = static_cast<double>(arc.a) / static_cast<double>(arc.q) + arc.lambda;
    double diff = alpha - recon;
    ASSERT_NEAR(diff - std::round(diff), 0.0, 1e-9);
  }
}

TEST(DirichletApprox, ExactRationalEntry) {
  auto arc = dirichlet_approx(mpq_class(22, 7), 50.0);
  EXPECT_EQ(arc.q, 7);
  EXPECT_EQ(arc.a, 1);  // 22/7 = 3 + 1/7
  EXPECT_EQ(arc.lambda, 0.0);
}

TEST(WindowParams, RadicalDefinitions) {
  auto p = ProblemInstance::equal_weights(3, 9, 1000000, 10000.0);
  auto wp = window_params(p);
  double center = 1000000.0 / 9.0;
  EXPECT_NEAR(wp.window_top[0], std::cbrt(center + 10000.0), 1e-9);
  EXPECT_NEAR(wp.window_len[0], std::cbrt(center + 10000.0) - std::cbrt(center - 10000.0), 1e-12);
  EXPECT_NEAR(wp.tau, 2.0 * 2.0 * 3.0 * wp.window_top[0] * wp.window_len[0], 1e-9);
  EXPECT_NEAR(wp.log_scale, std::log(1e6), 1e-15);
}

TEST(WindowParams, AsymptoticLengthApproximation) {
  // H_k vs 2H/(n mu^{1-1/n} N^{1-1/n}): Taylor remainder within twice the
  // squared window-relative ratio H/(mu_k N)
  for (double H : {1000.0, 10000.0, 50000.0}) {
    auto p = ProblemInstance::equal_weights(3, 9, 10000000, H);
    auto wp = window_params(p);
    double center = 1e7 / 9.0;
    for (std::size_t k = 0; k < 9; ++k) {
      double approx = 2.0 * H / (3.0 * std::pow(1.0 / 9.0, 2.0 / 3.0) * std::pow(1e7, 2.0 / 3.0));
      double rel = std::fabs(wp.window_len[k] - approx) / wp.window_len[k];
      EXPECT_LE(rel, 2.0 * (H / center) * (H / center) + 1e-12);
    }
  }
}

TEST(WindowParams, TauDominatesEveryWindow) {
  std::vector<double> mu{0.05, 0.1, 0.15, 0.2, 0.03, 0.07, 0.13, 0.17, 0.1};
  ProblemInstance p;
  p.n = 3;
  p.r = 9;
  p.N = 5000000;
  p.H = 20000.0;
  p.mu = mu;
  auto wp = window_params(p);
  for (std::size_t k = 0; k < 9; ++k) {
    double needed = 2.0 * (p.n - 1) * p.n * std::pow(wp.window_top[k], p.n - 2) * wp.window_len[k];
    EXPECT_GE(wp.tau * (1 + 1e-12), needed);
  }
}

TEST(WindowParams, RejectsWindowReachingZero) {
  auto p = ProblemInstance::equal_weights(3, 9, 1000, 500.0);  // mu N = 111 < H
  EXPECT_THROW(window_params(p), std::invalid_argument);
}

TEST(EtaScales, GlobalBelowPerQ) {
  auto p = ProblemInstance::equal_weights(3, 9, 1000000, 10000.0);
  auto wp = window_params(p);
  double limit = wp.major_q_limit();
  for (i64 q = 1; q <= static_cast<i64>(limit); ++q) EXPECT_LE(wp.eta_global(), wp.eta_q(q));
}

TEST(Classify, LabelsAndBoundaries) {
  // H large enough that H_r/L > 1 (the major arcs are nonempty) while the
  // M2 band (eta_1, 1/tau] still has room
  auto p = ProblemInstance::equal_weights(3, 9, 1000000, 70000.0);
  auto wp = window_params(p);
  ASSERT_GE(wp.major_q_limit(), 1.0);
  EXPECT_EQ(classify(ArcPoint{0, 1, 0.0}, wp), ArcLabel::M1);

  i64 big_q = static_cast<i64>(std::ceil(wp.major_q_limit())) + 1;
  EXPECT_EQ(classify(ArcPoint{1, big_q, 0.0}, wp), ArcLabel::Minor);

  double eta1 = wp.eta_q(1);
  ASSERT_LT(eta1, 1.0 / wp.tau);
  double mid = 0.5 * (eta1 + 1.0 / wp.tau);
  EXPECT_EQ(classify(ArcPoint{0, 1, mid}, wp), ArcLabel::M2);
  // boundary tie |lambda| = eta_q resolves to M1
  EXPECT_EQ(classify(ArcPoint{0, 1, eta1}, wp), ArcLabel::M1);
}

TEST(Classify, PartitionProperty) {
  auto p = ProblemInstance::equal_weights(3, 9, 1000000, 70000.0);
  auto wp = window_params(p);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  double limit = wp.major_q_limit();
  for (int t = 0; t < 10000; ++t) {
    double alpha = -1.0 / wp.tau + ua(rng);
    auto arc = dirichlet_approx(alpha, wp.tau);
    auto label = classify(arc, wp);
    bool major_modulus = static_cast<double>(arc.q) <= limit;
    if (label == ArcLabel::Minor)
      EXPECT_TRUE(!major_modulus || std::fabs(arc.lambda) > 1.0 / (arc.q * wp.tau));
    else
      EXPECT_TRUE(major_modulus);
  }
}
