#include "spbzo/min_norm_point.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace spbzo {

namespace {

// Weights of the point of minimum norm in the affine hull of the active points.
Vec affine_minimizer(const std::vector<Vec>& pts, const std::vector<int>& active) {
  const auto k = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) kkt(i, j) = pts[active[i]].dot(pts[active[j]]);
    kkt(i, k) = 1.0;
    kkt(k, i) = 1.0;
  }
  Vec rhs = Vec::Zero(k + 1);
  rhs[k] = 1.0;
  const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(k);
}

Vec combine(const std::vector<Vec>& pts, const std::vector<int>& active, const Vec& lambda) {
  Vec x = Vec::Zero(pts[active[0]].size());
  for (std::size_t i = 0; i < active.size(); ++i) x += lambda[i] * pts[active[i]];
  return x;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Vec>& points, double tol, int max_iter) {
  if (points.empty()) throw InputError("min_norm_point: no points");
  const auto dim = points[0].size();
  double scale = 0.0;
  for (const auto& p : points) {
    require_dim(p, dim, "min_norm_point");
    scale = std::max(scale, p.squaredNorm());
  }
  const double abs_tol = tol * std::max(1.0, scale);

  std::size_t first = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].squaredNorm() < points[first].squaredNorm()) first = i;
  }
  std::vector<int> active{static_cast<int>(first)};
  Vec lambda = Vec::Ones(1);
  Vec x = points[first];

  MinNormResult out;
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    std::size_t j = 0;
    double best = x.dot(points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double v = x.dot(points[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    out.gap = x.squaredNorm() - best;
    const bool already = std::find(active.begin(), active.end(), static_cast<int>(j)) != active.end();
    if (out.gap <= abs_tol || already) {
      // A repeated index means round-off has stalled the outer loop.
      out.converged = out.gap <= abs_tol;
      break;
    }
    active.push_back(static_cast<int>(j));
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    while (true) {
      const Vec alpha = affine_minimizer(points, active);
      if ((alpha.array() > 1e-14).all()) {
        lambda = alpha;
        x = combine(points, active, lambda);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha[i] <= 1e-14) theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      }
      lambda = (1.0 - theta) * lambda + theta * alpha;
      std::vector<int> kept;
      std::vector<double> kept_lambda;
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] > 1e-14) {
          kept.push_back(active[i]);
          kept_lambda.push_back(lambda[i]);
        }
      }
      active = kept;
      lambda = Eigen::Map<Vec>(kept_lambda.data(), static_cast<Eigen::Index>(kept_lambda.size()));
      lambda /= lambda.sum();
      x = combine(points, active, lambda);
      if (active.size() == 1) break;
    }
  }

  out.point = x;
  out.weights = Vec::Zero(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < active.size(); ++i) out.weights[active[i]] += lambda[i];
  return out;
}

}  // namespace spbzo
