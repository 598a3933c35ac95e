#pragma once

#include <vector>

#include "spbzo/types.hpp"

namespace spbzo {

struct MinNormResult {
  Vec point;
  // Convex weights over the input points.
  Vec weights;
  // ||x||^2 - min_i <x, p_i> at termination.
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Minimum-norm point of conv(points) by Wolfe's algorithm.
MinNormResult min_norm_point(const std::vector<Vec>& points, double tol = 1e-10,
                             int max_iter = 10000);

}  // namespace spbzo
