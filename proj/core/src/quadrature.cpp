#include "spbzo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "spbzo/special.hpp"

namespace spbzo {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

struct AxisRule {
  std::vector<double> u;
  std::vector<double> w;  // includes the 1-D standard normal density
};

AxisRule axis_rule(const std::vector<double>& cuts, int n) {
  const auto& gl = gauss_legendre(n);
  AxisRule out;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p];
    const double b = cuts[p + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
      const double u = mid + half * gl.nodes[i];
      out.u.push_back(u);
      out.w.push_back(half * gl.weights[i] * normal_pdf(u));
    }
  }
  return out;
}

// Panel boundaries on [-radius, radius] in the u variable.
std::vector<double> panel_cuts(const SpbFunction& fn, double x, double sigma, double radius) {
  std::vector<double> cuts{-radius, radius};
  for (const auto& pc : fn.pieces_1d) {
    for (double b : {pc.lo, pc.hi}) {
      if (!std::isfinite(b)) continue;
      const double u = (b - x) / sigma;
      if (u > -radius && u < radius) cuts.push_back(u);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

struct Integral {
  Vec sum;
  double abs_sum = 0.0;
};

// Integral of g(u) against the standard normal density on the truncated cube.
template <typename G>
Integral integrate(const SpbFunction& fn, const Vec& x, double sigma, int n, double radius,
                   Eigen::Index out_dim, G&& g) {
  Integral acc;
  acc.sum = Vec::Zero(out_dim);
  if (fn.dim == 1) {
    const auto rule = axis_rule(panel_cuts(fn, x[0], sigma, radius), n);
    Vec u(1);
    for (std::size_t i = 0; i < rule.u.size(); ++i) {
      u[0] = rule.u[i];
      const Vec v = g(u);
      acc.sum += rule.w[i] * v;
      acc.abs_sum += rule.w[i] * v.cwiseAbs().sum();
    }
  } else {
    const auto rule = axis_rule({-radius, radius}, n);
    Vec u(2);
    for (std::size_t i = 0; i < rule.u.size(); ++i) {
      for (std::size_t j = 0; j < rule.u.size(); ++j) {
        u[0] = rule.u[i];
        u[1] = rule.u[j];
        const double w = rule.w[i] * rule.w[j];
        const Vec v = g(u);
        acc.sum += w * v;
        acc.abs_sum += w * v.cwiseAbs().sum();
      }
    }
  }
  return acc;
}

void check_args(const SpbFunction& fn, const Vec& x, double sigma, int nodes, double radius) {
  if (fn.dim > 2) throw UnsupportedError("quadrature oracle supports dimension <= 2");
  require_dim(x, fn.dim, "quadrature");
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  if (nodes < 16) throw InputError("quadrature needs at least 16 nodes");
  if (!(radius > 0.0)) throw InputError("truncation radius must be positive");
}

int nodes_per_axis(const SpbFunction& fn, const Vec& x, double sigma, int nodes, double radius) {
  if (fn.dim == 1) return nodes * static_cast<int>(panel_cuts(fn, x[0], sigma, radius).size() - 1);
  return nodes;
}

constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw InputError("gauss_legendre: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(n));
  return *slot;
}

QuadratureResult gs_value_quadrature(const SpbFunction& fn, const Vec& x, double sigma, int nodes,
                                     double radius) {
  check_args(fn, x, sigma, nodes, radius);
  auto g = [&](const Vec& u) {
    Vec v(1);
    v[0] = fn.eval(x + sigma * u);
    return v;
  };
  const auto fine = integrate(fn, x, sigma, nodes, radius, 1, g);
  const auto coarse = integrate(fn, x, sigma, nodes / 2, radius, 1, g);
  QuadratureResult out;
  out.value = fine.sum[0];
  out.nodes_per_axis = nodes_per_axis(fn, x, sigma, nodes, radius);
  out.truncation_radius = radius;
  out.est_error = std::max(std::abs(fine.sum[0] - coarse.sum[0]), kRoundoff * fine.abs_sum);
  return out;
}

GradQuadratureResult gs_grad_fd_oracle(const SpbFunction& fn, const Vec& x, double sigma, int nodes,
                                       double radius) {
  check_args(fn, x, sigma, nodes, radius);
  const double h = 1e-3 * sigma;
  GradQuadratureResult out;
  out.value = Vec::Zero(fn.dim);
  out.nodes_per_axis = nodes_per_axis(fn, x, sigma, nodes, radius);
  out.truncation_radius = radius;
  double err2 = 0.0;
  for (Eigen::Index i = 0; i < fn.dim; ++i) {
    auto diff = [&](double step) {
      Vec xp = x;
      Vec xm = x;
      xp[i] += step;
      xm[i] -= step;
      const auto qp = gs_value_quadrature(fn, xp, sigma, nodes, radius);
      const auto qm = gs_value_quadrature(fn, xm, sigma, nodes, radius);
      return std::pair{(qp.value - qm.value) / (2.0 * step), (qp.est_error + qm.est_error) / (2.0 * step)};
    };
    const auto [d1, e1] = diff(h);
    const auto [d2, e2] = diff(2.0 * h);
    out.value[i] = d1;
    // Richardson: the O(h^2) truncation error of d1 is about (d2 - d1) / 3.
    const double ei = std::abs(d2 - d1) / 3.0 + e1;
    err2 += ei * ei;
  }
  out.est_error = std::sqrt(err2);
  return out;
}

GradQuadratureResult gs_grad_stein_quadrature(const SpbFunction& fn, const Vec& x, double sigma,
                                              int nodes, double radius) {
  check_args(fn, x, sigma, nodes, radius);
  auto g = [&](const Vec& u) { return Vec(fn.eval(x + sigma * u) / sigma * u); };
  const auto fine = integrate(fn, x, sigma, nodes, radius, fn.dim, g);
  const auto coarse = integrate(fn, x, sigma, nodes / 2, radius, fn.dim, g);
  GradQuadratureResult out;
  out.value = fine.sum;
  out.nodes_per_axis = nodes_per_axis(fn, x, sigma, nodes, radius);
  out.truncation_radius = radius;
  out.est_error = std::max((fine.sum - coarse.sum).norm(), kRoundoff * fine.abs_sum);
  return out;
}

}  // namespace spbzo
