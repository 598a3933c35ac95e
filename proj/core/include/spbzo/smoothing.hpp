#pragma once

#include <cstdint>
#include <limits>

#include "spbzo/catalog.hpp"

namespace spbzo {

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  double variance = 0.0;
  int n = 0;
  std::uint64_t seed = 0;
};

struct McVecEstimate {
  Vec mean;
  Vec stderr_;
  Vec variance;
  int n = 0;
  std::uint64_t seed = 0;
};

McEstimate gs_value_mc(const SpbFunction& fn, const Vec& x, double sigma, int n, std::uint64_t seed);

// Mean of f(x + sigma u) u / sigma.
McVecEstimate gs_grad_onepoint_mc(const SpbFunction& fn, const Vec& x, double sigma, int n,
                                  std::uint64_t seed);

// Mean of (f(x + sigma u) - f(x)) u / sigma. Same draws as the one-point form for equal seeds.
McVecEstimate gs_grad_twopoint_mc(const SpbFunction& fn, const Vec& x, double sigma, int n,
                                  std::uint64_t seed);

struct OracleValue {
  double value = 0.0;
  double error = 0.0;
};

struct OracleGrad {
  Vec value;
  double error = 0.0;
};

// f_sigma and its gradient from the closed form when the member has one,
// otherwise from quadrature (dimension <= 2).
OracleValue gs_value_oracle(const SpbFunction& fn, const Vec& x, double sigma);
OracleGrad gs_grad_oracle(const SpbFunction& fn, const Vec& x, double sigma);

struct InequalityReport {
  int checked = 0;
  int violations = 0;
  // max over samples of lhs - rhs
  double max_excess = -std::numeric_limits<double>::infinity();
  // max over samples of lhs / rhs (rhs > 0)
  double max_ratio = 0.0;
  double tolerance = 0.0;
  bool passed() const { return violations == 0; }
};

// f_sigma(x) - f_sigma(y) <= <grad f_sigma(y), x - y>
//   + [(A + B ||y||^m) / 2 + C ||x - y||^m / (m + 2)] ||x - y||^2
// over random pairs in the ball of the given radius, sigma uniform in [sigma_lo, sigma_hi].
InequalityReport check_descent_lemma(const SpbFunction& fn, double sigma_lo, double sigma_hi,
                                     int pairs, std::uint64_t seed, double radius = 5.0,
                                     double tolerance = 1e-6);

// |f_sigma(x) - f(x)| <= M(x) sigma at random points.
InequalityReport check_approx_error(const SpbFunction& fn, double sigma_lo, double sigma_hi,
                                    int points, std::uint64_t seed, double radius = 5.0,
                                    double tolerance = 1e-8);

struct MomentReport {
  int p = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool satisfied = false;
};

// Monte Carlo E||F(u)||^p, F(u) = (f(x + sigma u) - f(x)) u / sigma, against
// H_(p) (||x||^{mp} + 1) (1 + 5 relative stderr).
MomentReport check_moment_bound(const SpbFunction& fn, const Vec& x, double sigma, int p, int n,
                                std::uint64_t seed);

}  // namespace spbzo
