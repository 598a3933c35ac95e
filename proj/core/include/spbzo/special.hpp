#pragma once

namespace spbzo {

// Regularized lower / upper incomplete gamma P(s, x), Q(s, x) for s > 0, x >= 0.
double gamma_p(double s, double x);
double gamma_q(double s, double x);

// P(chi^2_d <= x).
double chi_square_cdf(double x, int d);

double normal_pdf(double t);
double normal_cdf(double t);
// P(alpha <= Z <= beta), accurate in both tails. Infinite endpoints allowed.
double normal_interval_prob(double alpha, double beta);

// log of (2 pi)^{d/2}
double log_gaussian_mass(int d);

}  // namespace spbzo
