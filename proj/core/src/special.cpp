#include "spbzo/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "spbzo/errors.hpp"

namespace spbzo {

namespace {

constexpr int kMaxIter = 10000;
constexpr double kEps = 1e-16;

double log_prefactor(double s, double x) { return -x + s * std::log(x) - std::lgamma(s); }

// P(s, x) by the power series; valid for x < s + 1.
double series_p(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return std::exp(log_prefactor(s, x) + std::log(sum));
}

// Q(s, x) by the modified Lentz continued fraction; valid for x >= s + 1.
double continued_fraction_q(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(s, x) + std::log(h));
}

void check_args(double s, double x) {
  if (!(s > 0.0)) throw DomainError("incomplete gamma: s must be positive");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be nonnegative");
}

}  // namespace

double gamma_p(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < s + 1.0 ? series_p(s, x) : 1.0 - continued_fraction_q(s, x);
}

double gamma_q(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return x < s + 1.0 ? 1.0 - series_p(s, x) : continued_fraction_q(s, x);
}

double chi_square_cdf(double x, int d) {
  if (d < 1) throw DomainError("chi_square_cdf: d must be >= 1");
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * d, 0.5 * x);
}

double normal_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double normal_interval_prob(double alpha, double beta) {
  if (!(alpha < beta)) return 0.0;
  auto upper = [](double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); };
  if (alpha >= 0.0) return upper(alpha) - upper(beta);
  if (beta <= 0.0) return normal_cdf(beta) - normal_cdf(alpha);
  return 1.0 - normal_cdf(alpha) - upper(beta);
}

double log_gaussian_mass(int d) { return 0.5 * d * std::log(2.0 * std::numbers::pi); }

}  // namespace spbzo
