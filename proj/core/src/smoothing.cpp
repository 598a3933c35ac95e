#include "spbzo/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "spbzo/constants.hpp"
#include "spbzo/quadrature.hpp"
#include "spbzo/rng.hpp"

namespace spbzo {

namespace {

void check_estimator_args(const SpbFunction& fn, const Vec& x, double sigma, int n) {
  require_dim(x, fn.dim, "estimator");
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  if (n < 2) throw InputError("estimators need n >= 2");
}

// Welford accumulation of vector samples.
class VecMoments {
 public:
  explicit VecMoments(Eigen::Index dim) : mean_(Vec::Zero(dim)), m2_(Vec::Zero(dim)) {}

  void add(const Vec& v) {
    ++count_;
    const Vec delta = v - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta.cwiseProduct(v - mean_);
  }

  McVecEstimate finish(std::uint64_t seed) const {
    McVecEstimate out;
    out.mean = mean_;
    out.variance = m2_ / static_cast<double>(count_ - 1);
    out.stderr_ = (out.variance / static_cast<double>(count_)).cwiseSqrt();
    out.n = static_cast<int>(count_);
    out.seed = seed;
    return out;
  }

 private:
  long long count_ = 0;
  Vec mean_;
  Vec m2_;
};

McVecEstimate grad_mc(const SpbFunction& fn, const Vec& x, double sigma, int n, std::uint64_t seed,
                      double baseline) {
  check_estimator_args(fn, x, sigma, n);
  NormalStream rng(seed);
  VecMoments acc(fn.dim);
  for (int i = 0; i < n; ++i) {
    const Vec u = rng.normal_vec(fn.dim);
    acc.add((fn.eval(x + sigma * u) - baseline) / sigma * u);
  }
  return acc.finish(seed);
}

}  // namespace

McEstimate gs_value_mc(const SpbFunction& fn, const Vec& x, double sigma, int n, std::uint64_t seed) {
  check_estimator_args(fn, x, sigma, n);
  NormalStream rng(seed);
  VecMoments acc(1);
  Vec v(1);
  for (int i = 0; i < n; ++i) {
    v[0] = fn.eval(x + sigma * rng.normal_vec(fn.dim));
    acc.add(v);
  }
  const auto r = acc.finish(seed);
  return McEstimate{r.mean[0], r.stderr_[0], r.variance[0], r.n, seed};
}

McVecEstimate gs_grad_onepoint_mc(const SpbFunction& fn, const Vec& x, double sigma, int n,
                                  std::uint64_t seed) {
  return grad_mc(fn, x, sigma, n, seed, 0.0);
}

McVecEstimate gs_grad_twopoint_mc(const SpbFunction& fn, const Vec& x, double sigma, int n,
                                  std::uint64_t seed) {
  require_dim(x, fn.dim, "estimator");
  return grad_mc(fn, x, sigma, n, seed, fn.eval(x));
}

OracleValue gs_value_oracle(const SpbFunction& fn, const Vec& x, double sigma) {
  require_dim(x, fn.dim, "gs_value_oracle");
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  if (fn.analytic_gs_value) return {fn.analytic_gs_value(x, sigma), 0.0};
  const auto q = gs_value_quadrature(fn, x, sigma);
  return {q.value, q.est_error};
}

OracleGrad gs_grad_oracle(const SpbFunction& fn, const Vec& x, double sigma) {
  require_dim(x, fn.dim, "gs_grad_oracle");
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  if (fn.analytic_gs_grad) return {fn.analytic_gs_grad(x, sigma), 0.0};
  const auto q = gs_grad_stein_quadrature(fn, x, sigma);
  return {q.value, q.est_error};
}

namespace {

void record(InequalityReport& rep, double lhs, double rhs) {
  ++rep.checked;
  const double excess = lhs - rhs;
  rep.max_excess = std::max(rep.max_excess, excess);
  if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
  if (excess > rep.tolerance) ++rep.violations;
}

void check_sigma_range(double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) throw InputError("need 0 < sigma_lo <= sigma_hi");
}

}  // namespace

InequalityReport check_descent_lemma(const SpbFunction& fn, double sigma_lo, double sigma_hi,
                                     int pairs, std::uint64_t seed, double radius,
                                     double tolerance) {
  check_sigma_range(sigma_lo, sigma_hi);
  const int m = fn.certificate.m();
  const Vec center = Vec::Zero(fn.dim);
  NormalStream rng(seed);
  InequalityReport rep;
  rep.tolerance = tolerance;
  for (int i = 0; i < pairs; ++i) {
    const Vec x = rng.uniform_in_ball(center, radius);
    const Vec y = rng.uniform_in_ball(center, radius);
    const double sigma = rng.uniform(sigma_lo, sigma_hi);
    const auto sc = smoothing_constants(fn.certificate, sigma, fn.dim);
    const double dist = (x - y).norm();
    const double lhs = gs_value_oracle(fn, x, sigma).value - gs_value_oracle(fn, y, sigma).value;
    const double coeff = 0.5 * (sc.cal_a + sc.cal_b * norm_pow(y, m)) +
                         sc.cal_c * pow_int(dist, m) / (m + 2);
    const double rhs = gs_grad_oracle(fn, y, sigma).value.dot(x - y) + coeff * dist * dist;
    record(rep, lhs, rhs);
  }
  return rep;
}

InequalityReport check_approx_error(const SpbFunction& fn, double sigma_lo, double sigma_hi,
                                    int points, std::uint64_t seed, double radius,
                                    double tolerance) {
  check_sigma_range(sigma_lo, sigma_hi);
  const Vec center = Vec::Zero(fn.dim);
  NormalStream rng(seed);
  InequalityReport rep;
  rep.tolerance = tolerance;
  for (int i = 0; i < points; ++i) {
    const Vec x = rng.uniform_in_ball(center, radius);
    const double sigma = rng.uniform(sigma_lo, sigma_hi);
    const double lhs = std::abs(gs_value_oracle(fn, x, sigma).value - fn.eval(x));
    const double rhs = approx_error_coeff(fn.certificate, sigma, fn.dim, x) * sigma;
    record(rep, lhs, rhs);
  }
  return rep;
}

MomentReport check_moment_bound(const SpbFunction& fn, const Vec& x, double sigma, int p, int n,
                                std::uint64_t seed) {
  if (p < 0 || p > 6) throw InputError("check_moment_bound: p must lie in 0..6");
  MomentReport rep;
  rep.p = p;
  const int m = fn.certificate.m();
  rep.bound = moment_coeff(fn.certificate, sigma, fn.dim, p) * (norm_pow(x, m * p) + 1.0);
  if (p == 0) {
    rep.estimate = 1.0;
    rep.bound = 1.0;
    rep.satisfied = true;
    return rep;
  }
  check_estimator_args(fn, x, sigma, n);
  const double fx = fn.eval(x);
  NormalStream rng(seed);
  VecMoments acc(1);
  Vec s(1);
  for (int i = 0; i < n; ++i) {
    const Vec u = rng.normal_vec(fn.dim);
    const double scale = std::abs(fn.eval(x + sigma * u) - fx) / sigma;
    s[0] = pow_int(scale * u.norm(), p);
    acc.add(s);
  }
  const auto r = acc.finish(seed);
  rep.estimate = r.mean[0];
  rep.stderr_ = r.stderr_[0];
  rep.slack = rep.estimate > 0.0 ? 5.0 * rep.stderr_ / rep.estimate : 0.0;
  rep.satisfied = rep.estimate <= rep.bound * (1.0 + rep.slack);
  return rep;
}

}  // namespace spbzo
