#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "waring/numeric.hpp"

namespace waring {

/// Summation window of a short Weyl sum: the y integers in (x-y, x].
struct WindowSpec {
  int n = 3;  // degree
  i64 x = 1;  // window top
  i64 y = 1;  // window length

  void validate() const {
    if (n < 2) throw std::invalid_argument("WindowSpec: degree must be >= 2");
    if (x < 1) throw std::invalid_argument("WindowSpec: window top must be >= 1");
    if (y < 1 || y > x) throw std::invalid_argument("WindowSpec: need 1 <= y <= x");
  }

  /// sqrt(x) < y <= x/ln(x); violations are warnings for moment uses, not errors.
  bool moment_range_ok() const {
    double xd = static_cast<double>(x);
    double yd = static_cast<double>(y);
    return yd * yd > xd && (x < 3 || yd <= xd / std::log(xd));
  }
};

/// Rational approximation alpha = a/q + lambda.
struct ArcPoint {
  i64 a = 0;
  i64 q = 1;
  double lambda = 0.0;

  double alpha() const { return static_cast<double>(a) / static_cast<double>(q) + lambda; }
};

/// The counting problem: x_1^n + ... + x_r^n = N with |x_i^n - mu_i N| <= H.
struct ProblemInstance {
  int n = 3;
  int r = 9;
  i64 N = 1;
  double H = 1.0;
  std::vector<double> mu;

  static int default_r(int n) { return (1 << n) + 1; }

  static ProblemInstance equal_weights(int n, int r, i64 N, double H) {
    ProblemInstance p;
    p.n = n;
    p.r = r;
    p.N = N;
    p.H = H;
    p.mu.assign(static_cast<std::size_t>(r), 1.0 / r);
    return p;
  }

  void validate() const {
    if (n < 3) throw std::invalid_argument("ProblemInstance: degree must be >= 3");
    if (r < 2) throw std::invalid_argument("ProblemInstance: summand count must be >= 2");
    if (N < 1) throw std::invalid_argument("ProblemInstance: target must be >= 1");
    if (!(H > 0.0)) throw std::invalid_argument("ProblemInstance: window half-width must be > 0");
    if (static_cast<int>(mu.size()) != r)
      throw std::invalid_argument("ProblemInstance: need exactly r weights");
    double sum = 0.0;
    for (double m : mu) {
      if (!(m > 0.0)) throw std::invalid_argument("ProblemInstance: weights must be positive");
      sum += m;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("ProblemInstance: weights must sum to 1");
  }

  bool non_default_r() const { return r != default_r(n); }
};

}  // namespace waring
