#pragma once

#include <Eigen/Core>

#include <cmath>
#include <string>

#include "spbzo/errors.hpp"

namespace spbzo {

using Vec = Eigen::VectorXd;

// x^n for a nonnegative base and integer exponent with 0^0 = 1.
inline double pow_int(double base, int n) {
  double result = 1.0;
  for (int i = 0; i < n; ++i) result *= base;
  return result;
}

// ||x||^m with the 0^0 = 1 convention.
inline double norm_pow(const Vec& x, int m) {
  if (m == 0) return 1.0;
  return pow_int(x.norm(), m);
}

inline void require_dim(const Vec& x, Eigen::Index dim, const char* what) {
  if (x.size() != dim) {
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(dim) +
                     ", got " + std::to_string(x.size()));
  }
}

}  // namespace spbzo
