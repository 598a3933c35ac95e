#pragma once

#include <cstdint>
#include <vector>

#include "spbzo/catalog.hpp"

namespace spbzo {

struct GoldsteinSet {
  enum class Kind { interval, hull };

  Kind kind = Kind::interval;
  // interval
  double lo = 0.0;
  double hi = 0.0;
  // hull of sampled gradients (an inner approximation)
  std::vector<Vec> points;
  bool exact = true;
  double delta = 0.0;
  Vec center;
};

// conv of all Clarke subgradients over [x - delta, x + delta]; exact for 1-D
// members with pieces. delta = 0 gives the Clarke subdifferential at x.
GoldsteinSet goldstein_interval_1d(const SpbFunction& fn, double x, double delta);

GoldsteinSet clarke_interval_1d(const SpbFunction& fn, double x);

// Gradients at `budget` uniform samples of B(x, delta) plus x itself.
GoldsteinSet goldstein_hull(const SpbFunction& fn, const Vec& x, double delta, int budget,
                            std::uint64_t seed);

// Distance from a point to [lo, hi].
double interval_distance(double v, double lo, double hi);

enum class Exactness { exact, upper_bound };

struct GoldsteinDistance {
  double value = 0.0;
  Exactness exactness = Exactness::exact;
};

// dist(0, Goldstein set). Exact for 1-D members with pieces, otherwise the
// min-norm point of a sampled hull, which over-estimates the distance.
GoldsteinDistance goldstein_distance(const SpbFunction& fn, const Vec& x, double delta,
                                     int budget = 200, std::uint64_t seed = 0);

enum class GradSource { closed_form, quadrature };

struct InclusionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool satisfied = false;
  double sigma_bar = 0.0;
  bool sigma_within_rule = false;
};

// dist(grad f_sigma(x), Goldstein set) <= (1 + |x|^m) epsilon on 1-D members.
InclusionCheck check_inclusion_thm38(const SpbFunction& fn, double x, double sigma, double delta,
                                     double epsilon, GradSource source = GradSource::closed_form);

// dist(grad f_sigma(x), Clarke subdifferential at x) for each sigma (decreasing).
std::vector<double> gradient_consistency_probe(const SpbFunction& fn, const Vec& x,
                                               const std::vector<double>& sigmas);

}  // namespace spbzo
