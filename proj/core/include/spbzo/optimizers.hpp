#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spbzo/catalog.hpp"

namespace spbzo {

struct FeasibleSet {
  enum class Kind { whole_space, box, ball };

  Kind kind = Kind::whole_space;
  Vec lo;
  Vec hi;
  Vec center;
  double radius = 0.0;

  static FeasibleSet whole_space();
  static FeasibleSet box(Vec lo, Vec hi);
  static FeasibleSet ball(Vec center, double radius);

  // "whole", "ball:R", "ball:c1,c2,...:R", "box:l1,l2,...:h1,h2,...".
  // A scalar center or bound is broadcast to `dim` coordinates.
  static FeasibleSet parse(std::string_view spec, int dim);
  std::string to_string() const;

  bool contains(const Vec& x, double tol = 1e-12) const;
};

Vec project(const FeasibleSet& set, const Vec& x);

struct Schedule {
  enum class Kind { constant_over_sqrt, explicit_list };

  Kind kind = Kind::constant_over_sqrt;
  double gamma = 1.0;
  std::vector<double> taus;

  static Schedule constant_over_sqrt(double gamma);
  static Schedule explicit_list(std::vector<double> taus);

  // tau_k for a horizon T (k = 0..T).
  double tau(int k, int horizon) const;
  void validate(int horizon) const;
};

struct Trajectory {
  int algorithm = 1;
  // x^0 .. x^{T+1}
  std::vector<Vec> xs;
  // v^0 .. v^T
  std::vector<Vec> vs;
  // tau_k and the effective stepsize tau_k / divisor_k
  std::vector<double> taus;
  std::vector<double> steps;
  // f(x^0) .. f(x^T)
  std::vector<double> fvals;
  std::uint64_t seed = 0;
  std::string config_hash;
  long long oracle_calls = 0;
  std::vector<std::string> warnings;

  int horizon() const { return static_cast<int>(vs.size()) - 1; }
};

// Projected two-point scheme: x^{k+1} = P(x^k - tau_k v^k / (||x^k||^m + 1)).
Trajectory run_algorithm1(const SpbFunction& fn, const FeasibleSet& set, const Vec& x0, double sigma,
                          const Schedule& schedule, int horizon, std::uint64_t seed);

// Unconstrained: x^{k+1} = x^k - tau_k v^k / (||x^k||^{2m} + 1).
Trajectory run_algorithm2(const SpbFunction& fn, const Vec& x0, double sigma,
                          const Schedule& schedule, int horizon, std::uint64_t seed);

// (f(x^k) - f*) / (||x^k||^m + 1) for k = 0..T. f* defaults to fn.inf_value.
std::vector<double> relative_gap_series(const Trajectory& traj, const SpbFunction& fn,
                                        std::optional<double> f_star = std::nullopt);

// ||grad f_sigma(x^k)||^2 / (||x^k||^m + 1)^2 for k = 0..T. Uses the gradient
// oracle when available, otherwise a two-point Monte Carlo estimate with mc_n draws.
std::vector<double> wtilde_series(const Trajectory& traj, const SpbFunction& fn, double sigma,
                                  int mc_n = 100000, std::uint64_t mc_seed = 0);

// Index of the smallest entry; ties go to the smallest index.
std::size_t argmin_first(const std::vector<double>& series);

}  // namespace spbzo
