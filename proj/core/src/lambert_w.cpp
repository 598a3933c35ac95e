#include "spbzo/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "spbzo/errors.hpp"

namespace spbzo {

namespace {

constexpr double kTol = 1e-12;
constexpr int kMaxIter = 100;

// 1 + e t with e split into two doubles so the cancellation near t = -1/e is exact.
double branch_distance(double t) {
  constexpr double e_hi = std::numbers::e;
  constexpr double e_lo = 1.4456468917292502e-16;
  return std::fma(e_hi, t, 1.0) + e_lo * t;
}

WEval finish(double t, double w) {
  WEval out;
  out.input = t;
  out.value = w;
  out.residual = std::abs(w * std::exp(w) - t);
  out.converged = out.residual <= kTol;
  return out;
}

}  // namespace

WEval w_minus1(double t) {
  if (!(t < 0.0)) throw DomainError("w_minus1: argument must be negative");

  const double z = branch_distance(t);
  if (std::abs(z) <= 8.0 * std::numeric_limits<double>::epsilon()) return finish(t, -1.0);
  if (z < 0.0) {
    WEval out;
    out.input = t;
    out.value = 0.0;
    out.residual = std::abs(t);
    out.converged = true;
    return out;
  }

  const double log_mt = std::log(-t);
  double w;
  if (z < 0.25) {
    const double p = -std::sqrt(2.0 * z);
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    const double l2 = std::log(-log_mt);
    w = log_mt - l2 + l2 / log_mt;
  }

  // Root of phi(w) = w + ln(-w) - ln(-t), increasing on (-inf, -1).
  const double u = -log_mt - 1.0;
  double lo = -2.0 - std::sqrt(2.0 * u) - u;
  double hi = -1.0;
  if (!(w > lo && w < hi)) w = 0.5 * (lo + hi);

  for (int it = 0; it < kMaxIter; ++it) {
    const double phi = w + std::log(-w) - log_mt;
    if (phi < 0.0) {
      lo = w;
    } else {
      hi = w;
    }
    if (phi == 0.0) break;
    const double d1 = (w + 1.0) / w;
    const double d2 = -1.0 / (w * w);
    double next = w - phi / (d1 - 0.5 * phi * d2 / d1);
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - w);
    w = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return finish(t, w);
}

}  // namespace spbzo
