#pragma once

#include <optional>
#include <vector>

#include "spbzo/catalog.hpp"
#include "spbzo/types.hpp"

namespace spbzo {

// Lipschitz-type constants of f_sigma (frak_*) and of grad f_sigma (cal_*).
struct SmoothingConstants {
  double frak_a = 0.0;
  double frak_b = 0.0;
  double frak_c = 0.0;
  double cal_a = 0.0;
  double cal_b = 0.0;
  double cal_c = 0.0;
  double sigma = 0.0;
  int dim = 0;
};

SmoothingConstants smoothing_constants(const SpbCertificate& cert, double sigma, int d);

// M(x) and its sigma-free upper variant.
double approx_error_coeff(const SpbCertificate& cert, double sigma, int d, const Vec& x);
double approx_error_coeff_breve(const SpbCertificate& cert, int d, const Vec& x);

// H_(p) and its sigma-free upper variant.
double moment_coeff(const SpbCertificate& cert, double sigma, int d, int p);
double moment_coeff_breve(const SpbCertificate& cert, int d, int p);

struct SigmaRule {
  double epsilon = 0.0;
  double delta = 0.0;
  double cal_p = 0.0;
  double eta1 = 0.0;
  double h = 0.0;
  double sigma_bar = 0.0;
  // Present only when 0 < epsilon < min{5 R2, 1} and 0 < delta < 1.
  std::optional<double> simplified_bound;
  double m1 = 0.0;
  double m2 = 0.0;
};

SigmaRule goldstein_sigma_rule(const SpbCertificate& cert, int d, double epsilon, double delta);

// [-d W_{-1}(-nu^{2/d} / (2 pi e))]^{1/2}
double lemma37_radius(int d, double nu);

struct TailCheck {
  bool bound_satisfied = false;
  double integral = 0.0;
};

// Integral of exp(-||u||^2 / 2) over ||u|| >= M in R^d, compared against nu.
TailCheck tail_radius_check(int d, double nu, double radius);

struct RateInputs {
  double gamma = 1.0;
  int horizon = 1;
  double sigma = 0.0;
  Vec x0;
  std::optional<Vec> xstar;
  std::optional<double> inf_value;
  std::optional<double> f_x0;
  std::optional<double> mu;
  std::optional<double> sup_s_norm;
  // Explicit stepsizes tau_0..tau_T; empty means tau_k = gamma / sqrt(T + 1).
  std::vector<double> taus;
};

void validate_rate_inputs(const RateInputs& in, int d);

// sum_k tau_k^power over k = 0..T.
double schedule_power_sum(const RateInputs& in, int power);

double convex_rate_rhs(const SpbCertificate& cert, const RateInputs& in, int d);

struct Corollary47 {
  double m_bd = 0.0;
  double c_bd = 0.0;
  double c_lev = 0.0;
  // (1 + sqrt(M_bd)) (2 C_bd T^{-1/2} + 2 M(x*) sigma)^{1/(2 ceil(m/2))}; m >= 1 only.
  std::optional<double> final_bound;
};

Corollary47 corollary47_constants(const SpbFunction& fn, const RateInputs& in);

double unconstrained_rate_rhs(const SpbCertificate& cert, const RateInputs& in, int d);

struct Corollary410 {
  double c_tilde_omega = 0.0;
  double m_tilde_omega = 0.0;
};

Corollary410 corollary410_constants(const SpbCertificate& cert, const RateInputs& in, int d);

// K bounding sigma * C~_Omega when gamma = sigma <= 1.
double lemma51_k(const SpbCertificate& cert, int d, const Vec& x0, double f_x0, double inf_value);

struct Theorem52Inputs {
  Vec x0;
  double f_x0 = 0.0;
  double inf_value = 0.0;
  std::optional<double> mu;
  std::optional<double> sup_s_norm;
};

struct ScheduleTheorem52 {
  double kappa = 0.0;
  std::optional<double> kappa1;
  double kappa2 = 0.0;
  double sigma_breve = 0.0;
  double n_breve = 0.0;
  double eps_breve = 0.0;
  double k_const = 0.0;
  std::optional<double> k_tilde_omega;
  bool horizon_ok = false;
  // Right-hand side of the Goldstein-stationarity bound; for m >= 1 needs K~_Omega.
  std::optional<double> rhs;
  // Simplified bound on N(m) when its dimension condition holds.
  std::optional<double> n_breve_simplified;
};

ScheduleTheorem52 theorem52_schedule(const SpbCertificate& cert, int d, double delta, int horizon,
                                     const Theorem52Inputs& in);

// (1 + sqrt(beta_c)) (2 alpha_c)^{1/(2 ceil(n/2))}
double lemma44_rhs(double alpha_c, double beta_c, int n);

}  // namespace spbzo
