#pragma once

#include <vector>

#include "spbzo/catalog.hpp"

namespace spbzo {

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point rule on [-1, 1]. Rules are cached; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int n);

struct QuadratureResult {
  double value = 0.0;
  int nodes_per_axis = 0;
  double truncation_radius = 0.0;
  double est_error = 0.0;
};

struct GradQuadratureResult {
  Vec value;
  int nodes_per_axis = 0;
  double truncation_radius = 0.0;
  double est_error = 0.0;
};

// f_sigma(x) by composite Gauss-Legendre over [-radius, radius]^d against the
// Gaussian density. In 1-D the panels are split at the member's breakpoints.
// est_error compares against the rule with half the nodes, floored at the
// round-off level of the sum.
QuadratureResult gs_value_quadrature(const SpbFunction& fn, const Vec& x, double sigma,
                                     int nodes = 200, double radius = 10.0);

// Central differences of gs_value_quadrature with step 1e-3 sigma.
GradQuadratureResult gs_grad_fd_oracle(const SpbFunction& fn, const Vec& x, double sigma,
                                       int nodes = 200, double radius = 10.0);

// sigma^{-1} E[f(x + sigma u) u] by the same quadrature.
GradQuadratureResult gs_grad_stein_quadrature(const SpbFunction& fn, const Vec& x, double sigma,
                                              int nodes = 200, double radius = 10.0);

}  // namespace spbzo
