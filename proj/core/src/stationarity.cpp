#include "spbzo/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spbzo/constants.hpp"
#include "spbzo/min_norm_point.hpp"
#include "spbzo/quadrature.hpp"
#include "spbzo/rng.hpp"
#include "spbzo/smoothing.hpp"

namespace spbzo {

GoldsteinSet goldstein_interval_1d(const SpbFunction& fn, double x, double delta) {
  if (fn.dim != 1 || !fn.has_pieces()) throw UnsupportedError(fn.id + ": exact sets need 1-D pieces");
  if (!(delta >= 0.0)) throw InputError("delta must be nonnegative");
  GoldsteinSet set;
  set.kind = GoldsteinSet::Kind::interval;
  set.delta = delta;
  set.center = Vec::Constant(1, x);
  set.lo = std::numeric_limits<double>::infinity();
  set.hi = -set.lo;
  // Closed pieces: a piece that only touches the window still contributes its
  // one-sided derivative, which belongs to the Clarke set at the breakpoint.
  for (const auto& pc : fn.pieces_1d) {
    const double a = std::max(pc.lo, x - delta);
    const double b = std::min(pc.hi, x + delta);
    if (a > b) continue;
    const auto [lo, hi] = pc.derivative_range(a, b);
    set.lo = std::min(set.lo, lo);
    set.hi = std::max(set.hi, hi);
  }
  return set;
}

GoldsteinSet clarke_interval_1d(const SpbFunction& fn, double x) {
  return goldstein_interval_1d(fn, x, 0.0);
}

GoldsteinSet goldstein_hull(const SpbFunction& fn, const Vec& x, double delta, int budget,
                            std::uint64_t seed) {
  require_dim(x, fn.dim, "goldstein_hull");
  if (!fn.has_analytic_grad()) throw UnsupportedError(fn.id + ": no gradient access");
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  if (budget < 1) throw InputError("budget must be >= 1");
  GoldsteinSet set;
  set.kind = GoldsteinSet::Kind::hull;
  set.exact = false;
  set.delta = delta;
  set.center = x;
  NormalStream rng(seed);
  set.points.push_back(fn.analytic_grad(x));
  for (int i = 0; i < budget; ++i) set.points.push_back(fn.analytic_grad(rng.uniform_in_ball(x, delta)));
  return set;
}

double interval_distance(double v, double lo, double hi) {
  if (v < lo) return lo - v;
  if (v > hi) return v - hi;
  return 0.0;
}

GoldsteinDistance goldstein_distance(const SpbFunction& fn, const Vec& x, double delta, int budget,
                                     std::uint64_t seed) {
  require_dim(x, fn.dim, "goldstein_distance");
  if (fn.dim == 1 && fn.has_pieces()) {
    const auto set = goldstein_interval_1d(fn, x[0], delta);
    return {interval_distance(0.0, set.lo, set.hi), Exactness::exact};
  }
  const auto set = goldstein_hull(fn, x, delta, budget, seed);
  return {min_norm_point(set.points).point.norm(), Exactness::upper_bound};
}

InclusionCheck check_inclusion_thm38(const SpbFunction& fn, double x, double sigma, double delta,
                                     double epsilon, GradSource source) {
  if (fn.dim != 1 || !fn.has_pieces()) throw UnsupportedError(fn.id + ": inclusion needs an exact set");
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  const Vec xv = Vec::Constant(1, x);
  const auto rule = goldstein_sigma_rule(fn.certificate, 1, epsilon, delta);
  const auto set = goldstein_interval_1d(fn, x, delta);
  double grad = 0.0;
  if (source == GradSource::closed_form) {
    if (!fn.analytic_gs_grad) throw UnsupportedError(fn.id + ": no closed-form smoothed gradient");
    grad = fn.analytic_gs_grad(xv, sigma)[0];
  } else {
    grad = gs_grad_stein_quadrature(fn, xv, sigma).value[0];
  }
  InclusionCheck out;
  out.lhs = interval_distance(grad, set.lo, set.hi);
  out.rhs = (1.0 + norm_pow(xv, fn.certificate.m())) * epsilon;
  out.margin = out.rhs - out.lhs;
  out.satisfied = out.margin >= 0.0;
  out.sigma_bar = rule.sigma_bar;
  out.sigma_within_rule = sigma <= rule.sigma_bar;
  return out;
}

std::vector<double> gradient_consistency_probe(const SpbFunction& fn, const Vec& x,
                                               const std::vector<double>& sigmas) {
  require_dim(x, fn.dim, "gradient_consistency_probe");
  for (std::size_t i = 1; i < sigmas.size(); ++i) {
    if (!(sigmas[i] < sigmas[i - 1])) throw InputError("sigmas must be strictly decreasing");
  }
  std::vector<double> out;
  out.reserve(sigmas.size());
  if (fn.dim == 1 && fn.has_pieces()) {
    const auto clarke = clarke_interval_1d(fn, x[0]);
    for (double s : sigmas) {
      out.push_back(interval_distance(gs_grad_oracle(fn, x, s).value[0], clarke.lo, clarke.hi));
    }
    return out;
  }
  if (!fn.has_analytic_grad()) throw UnsupportedError(fn.id + ": no Clarke set available");
  const Vec g = fn.analytic_grad(x);
  for (double s : sigmas) out.push_back((gs_grad_oracle(fn, x, s).value - g).norm());
  return out;
}

}  // namespace spbzo
