#include "spbzo/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spbzo/lambert_w.hpp"
#include "spbzo/special.hpp"

namespace spbzo {

namespace {

// base^{k/2} for integer k >= 0, exact when k is even.
double half_pow(double base, int k) {
  if (k % 2 == 0) return pow_int(base, k / 2);
  return pow_int(base, (k - 1) / 2) * std::sqrt(base);
}

double pow2(int e) { return std::ldexp(1.0, e); }

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("sigma must be positive");
}

void require_dim_positive(int d) {
  if (d < 1) throw InputError("dimension must be >= 1");
}

int ceil_half(int n) { return (n + 1) / 2; }

}  // namespace

SmoothingConstants smoothing_constants(const SpbCertificate& cert, double sigma, int d) {
  require_sigma(sigma);
  require_dim_positive(d);
  const int m = cert.m();
  const double r1 = cert.r1();
  const double r2 = cert.r2();
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  SmoothingConstants c;
  c.sigma = sigma;
  c.dim = d;
  if (m == 0) {
    c.frak_a = r2;
    c.cal_a = r2 * sqrt_d / sigma;
    return c;
  }
  const double c22 = pow2(2 * m - 2) * r1;
  c.frak_a = c22 * pow_int(sigma, m) * half_pow(m + d, m) + r2;
  c.frak_b = c22;
  c.frak_c = pow2(m - 1) * r1;
  c.cal_a = c22 * pow_int(sigma, m - 1) * half_pow(m + 1 + d, m + 1) + r2 * sqrt_d / sigma;
  c.cal_b = c22 * sqrt_d / sigma;
  c.cal_c = pow2(m - 1) * r1 * sqrt_d / sigma;
  return c;
}

double approx_error_coeff(const SpbCertificate& cert, double sigma, int d, const Vec& x) {
  require_sigma(sigma);
  require_dim(x, d, "approx_error_coeff");
  const int m = cert.m();
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  if (m == 0) return cert.r2() * sqrt_d;
  const double c = pow2(m - 1) * cert.r1();
  return (c * norm_pow(x, m) + cert.r2()) * sqrt_d + c * pow_int(sigma, m) * half_pow(m + 1 + d, m + 1);
}

double approx_error_coeff_breve(const SpbCertificate& cert, int d, const Vec& x) {
  require_dim(x, d, "approx_error_coeff_breve");
  const int m = cert.m();
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  if (m == 0) return cert.r2() * sqrt_d;
  const double c = pow2(m - 1) * cert.r1();
  return (c * norm_pow(x, m) + cert.r2()) * sqrt_d + c * half_pow(m + 1 + d, m + 1);
}

double moment_coeff(const SpbCertificate& cert, double sigma, int d, int p) {
  require_sigma(sigma);
  require_dim_positive(d);
  if (p < 0) throw InputError("moment_coeff: p must be >= 0");
  if (p == 0) return 1.0;
  const int m = cert.m();
  const double lead = pow_int(3.0, p - 1);
  const double base = pow_int(2.0 * p + d, p);
  if (m == 0) return lead * (pow_int(cert.r2(), p) * base);
  const double r1_term = pow2((m - 1) * p) * pow_int(cert.r1(), p);
  const double first = r1_term * base;
  const double second = pow_int(cert.r2(), p) * base +
                        r1_term * pow_int(sigma, m * p) * half_pow((m + 2) * p + d, (m + 2) * p);
  return lead * std::max(first, second);
}

double moment_coeff_breve(const SpbCertificate& cert, int d, int p) {
  require_dim_positive(d);
  if (p < 0) throw InputError("moment_coeff_breve: p must be >= 0");
  if (p == 0) return 1.0;
  const int m = cert.m();
  const double lead = pow_int(3.0, p - 1);
  const double first = pow_int(cert.r2(), p) * pow_int(2.0 * p + d, p);
  if (m == 0) return lead * first;
  return lead * (first + pow2((m - 1) * p) * pow_int(cert.r1(), p) *
                             half_pow((m + 2) * p + d, (m + 2) * p));
}

SigmaRule goldstein_sigma_rule(const SpbCertificate& cert, int d, double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw InputError("goldstein_sigma_rule: epsilon must be positive");
  if (!(delta > 0.0)) throw InputError("goldstein_sigma_rule: delta must be positive");
  require_dim_positive(d);
  const int m = cert.m();
  const double r1 = cert.r1();
  const double r2 = cert.r2();
  const double poly = m == 0 ? 0.0 : pow2(m + 1) * r1 * half_pow(m + d, m);

  SigmaRule rule;
  rule.epsilon = epsilon;
  rule.delta = delta;
  rule.cal_p = 4.0 * r2 + poly;
  const double cap = std::exp(log_gaussian_mass(d)) - 0.5;
  rule.eta1 = std::min(epsilon / rule.cal_p, cap);
  const double arg =
      -std::exp(2.0 / d * std::log(rule.eta1)) / (2.0 * std::numbers::pi * std::numbers::e);
  rule.h = std::sqrt(-d * w_minus1(arg).value);

  rule.sigma_bar = std::min(1.0, delta / rule.h);
  if (m >= 1) rule.sigma_bar = std::min(rule.sigma_bar, std::pow(epsilon / poly, 1.0 / m));

  rule.m1 = cap * rule.cal_p;
  rule.m2 = std::exp(0.5 * d * std::log(std::numbers::pi * std::numbers::e / 5.0)) * rule.cal_p;

  if (epsilon < std::min(5.0 * r2, 1.0) && delta < 1.0) {
    const double radial = delta * std::pow(rule.cal_p, -1.0 / d) /
                          std::sqrt(d * std::numbers::pi * std::numbers::e);
    if (m == 0) {
      rule.simplified_bound = radial * std::pow(epsilon, 1.0 / d);
    } else {
      const double coeff = std::min(std::pow(poly, -1.0 / m), radial);
      rule.simplified_bound = coeff * std::pow(epsilon, std::max(1.0 / m, 1.0 / d));
    }
  }
  return rule;
}

double lemma37_radius(int d, double nu) {
  require_dim_positive(d);
  if (!(nu > 0.0)) throw InputError("lemma37_radius: nu must be positive");
  const double arg = -std::exp(2.0 / d * std::log(nu)) / (2.0 * std::numbers::pi * std::numbers::e);
  return std::sqrt(-d * w_minus1(arg).value);
}

TailCheck tail_radius_check(int d, double nu, double radius) {
  require_dim_positive(d);
  if (!(radius >= 0.0)) throw InputError("tail_radius_check: M must be nonnegative");
  TailCheck out;
  const double q = gamma_q(0.5 * d, 0.5 * radius * radius);
  out.integral = q == 0.0 ? 0.0 : std::exp(log_gaussian_mass(d) + std::log(q));
  out.bound_satisfied = out.integral <= nu;
  return out;
}

void validate_rate_inputs(const RateInputs& in, int d) {
  if (!(in.gamma > 0.0 && in.gamma <= 1.0)) throw InputError("gamma must lie in (0, 1]");
  if (in.horizon < 0) throw InputError("horizon T must be >= 0");
  require_sigma(in.sigma);
  require_dim(in.x0, d, "x0");
  if (in.xstar) require_dim(*in.xstar, d, "xstar");
  if (!in.taus.empty()) {
    if (static_cast<int>(in.taus.size()) != in.horizon + 1) {
      throw InputError("explicit schedule needs T + 1 stepsizes");
    }
    for (double t : in.taus) {
      if (!(t > 0.0 && t <= 1.0)) throw InputError("stepsizes must lie in (0, 1]");
    }
  }
  if (in.mu && !(*in.mu > 0.0)) throw InputError("mu must be positive");
}

double schedule_power_sum(const RateInputs& in, int power) {
  if (in.taus.empty()) {
    const double n = in.horizon + 1.0;
    return n * std::pow(in.gamma / std::sqrt(n), power);
  }
  double s = 0.0;
  for (double t : in.taus) s += pow_int(t, power);
  return s;
}

double convex_rate_rhs(const SpbCertificate& cert, const RateInputs& in, int d) {
  validate_rate_inputs(in, d);
  if (!in.xstar) throw InputError("convex_rate_rhs: x* is required");
  const double h2 = moment_coeff(cert, in.sigma, d, 2);
  const double s1 = schedule_power_sum(in, 1);
  const double s2 = schedule_power_sum(in, 2);
  const double gap = (in.x0 - *in.xstar).squaredNorm();
  return (gap + h2 * s2) / (2.0 * s1) + approx_error_coeff(cert, in.sigma, d, *in.xstar) * in.sigma;
}

Corollary47 corollary47_constants(const SpbFunction& fn, const RateInputs& in) {
  const int d = fn.dim;
  RateInputs local = in;
  if (!local.xstar && fn.minimizer) local.xstar = fn.minimizer;
  validate_rate_inputs(local, d);
  if (!local.xstar) throw InputError("corollary47_constants: x* is required");
  if (!fn.level_radius) throw UnsupportedError(fn.id + ": no closed-form level-set radius");

  const auto& cert = fn.certificate;
  const Vec& xs = *local.xstar;
  const double h2 = moment_coeff(cert, local.sigma, d, 2);
  const double m_xs = approx_error_coeff(cert, local.sigma, d, xs);
  const double g2 = local.gamma * local.gamma;

  Corollary47 out;
  out.c_lev = fn.level_radius(fn.eval(xs) + m_xs * local.sigma);
  out.m_bd = 4.0 * local.x0.squaredNorm() + 6.0 * out.c_lev * out.c_lev + 2.0 * h2 * g2;
  out.c_bd = ((local.x0 - xs).squaredNorm() + h2 * g2) / (2.0 * local.gamma);
  const int m = cert.m();
  if (m >= 1 && local.horizon >= 1) {
    const double inner = 2.0 * out.c_bd / std::sqrt(static_cast<double>(local.horizon)) +
                         2.0 * m_xs * local.sigma;
    out.final_bound = (1.0 + std::sqrt(out.m_bd)) * std::pow(inner, 1.0 / (2 * ceil_half(m)));
  }
  return out;
}

double unconstrained_rate_rhs(const SpbCertificate& cert, const RateInputs& in, int d) {
  validate_rate_inputs(in, d);
  if (!in.inf_value) throw InputError("unconstrained_rate_rhs: inf f is required");
  if (!in.f_x0) throw InputError("unconstrained_rate_rhs: f(x0) is required");
  const int m = cert.m();
  const auto sc = smoothing_constants(cert, in.sigma, d);
  const double h2 = moment_coeff(cert, in.sigma, d, 2);
  const double s1 = schedule_power_sum(in, 1);
  const double s2 = schedule_power_sum(in, 2);
  double numer = approx_error_coeff(cert, in.sigma, d, in.x0) * in.sigma + *in.f_x0 - *in.inf_value +
                 0.5 * h2 * (sc.cal_a + sc.cal_b) * s2;
  if (m >= 1) {
    const double hm2 = moment_coeff(cert, in.sigma, d, m + 2);
    numer += hm2 * sc.cal_c / (m + 2) * schedule_power_sum(in, m + 2);
  }
  return numer / s1;
}

Corollary410 corollary410_constants(const SpbCertificate& cert, const RateInputs& in, int d) {
  validate_rate_inputs(in, d);
  if (!in.mu) throw InputError("corollary410_constants: mu is required");
  if (!in.sup_s_norm) throw InputError("corollary410_constants: sup over the solution set is required");
  if (!in.inf_value) throw InputError("corollary410_constants: inf f is required");
  if (!in.f_x0) throw InputError("corollary410_constants: f(x0) is required");
  const int m = cert.m();
  const double g = in.gamma;
  const auto sc = smoothing_constants(cert, in.sigma, d);
  const double h2 = moment_coeff(cert, in.sigma, d, 2);
  double bracket = *in.f_x0 - *in.inf_value + approx_error_coeff(cert, in.sigma, d, in.x0) * in.sigma +
                   0.5 * h2 * (sc.cal_a + sc.cal_b) * g * g;
  if (m >= 1) bracket += moment_coeff(cert, in.sigma, d, m + 2) * sc.cal_c * pow_int(g, m + 2) / (m + 2);

  Corollary410 out;
  out.c_tilde_omega = bracket / g;
  const double mu = *in.mu;
  out.m_tilde_omega = 8.0 / mu * (g * out.c_tilde_omega + 0.5 * mu * in.sigma * in.sigma * d) +
                      2.0 * *in.sup_s_norm * *in.sup_s_norm;
  return out;
}

double lemma51_k(const SpbCertificate& cert, int d, const Vec& x0, double f_x0, double inf_value) {
  require_dim(x0, d, "x0");
  const int m = cert.m();
  const double r1 = cert.r1();
  const double r2 = cert.r2();
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const double hb2 = moment_coeff_breve(cert, d, 2);
  double k = f_x0 - inf_value + approx_error_coeff_breve(cert, d, x0);
  if (m == 0) return k + 0.5 * hb2 * (r2 * sqrt_d);
  k += 0.5 * hb2 * (pow2(2 * m - 2) * r1 * half_pow(m + 1 + d, m + 1) + r2 * sqrt_d);
  k += pow2(2 * m - 3) * hb2 * r1 * sqrt_d;
  k += pow2(m - 1) * r1 * moment_coeff_breve(cert, d, m + 2) / (m + 2) * sqrt_d;
  return k;
}

ScheduleTheorem52 theorem52_schedule(const SpbCertificate& cert, int d, double delta, int horizon,
                                     const Theorem52Inputs& in) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("theorem52_schedule: delta must lie in (0, 1)");
  if (horizon < 1) throw InputError("theorem52_schedule: T must be >= 1");
  require_dim_positive(d);
  const int m = cert.m();
  const double r1 = cert.r1();
  const double r2 = cert.r2();
  const double poly = m == 0 ? 0.0 : pow2(m + 1) * r1 * half_pow(m + d, m);
  const double cal_p = 4.0 * r2 + poly;
  const double floor5 = std::min(5.0 * r2, 1.0);
  const double t = horizon;

  ScheduleTheorem52 s;
  s.kappa2 = delta * std::pow(cal_p, -1.0 / d) / std::sqrt(d * std::numbers::pi * std::numbers::e);
  const int q = m == 0 ? d : std::min(m, d);
  if (m >= 1) {
    s.kappa1 = std::min(std::pow(poly, -1.0 / m), s.kappa2);
    s.kappa = *s.kappa1;
  } else {
    s.kappa = s.kappa2;
  }
  s.n_breve = std::pow(std::max(std::pow(floor5, -1.0 / q), s.kappa), 4 * q + 2) + 1.0;
  s.sigma_breve = s.kappa * std::pow(t, -1.0 / (4 * q + 2));
  s.eps_breve = std::pow(t, -static_cast<double>(q) / (4 * q + 2));
  s.k_const = lemma51_k(cert, d, in.x0, in.f_x0, in.inf_value);
  s.horizon_ok = t >= s.n_breve;
  if (in.mu && in.sup_s_norm) {
    s.k_tilde_omega = 8.0 / *in.mu * s.k_const + 4.0 * d + 2.0 * *in.sup_s_norm * *in.sup_s_norm;
  }

  const double rate = 0.25 - 1.0 / (8.0 * q + 4.0);
  const double base = 2.0 * std::sqrt(s.k_const) / std::sqrt(s.kappa) + 2.0;
  if (m == 0) {
    s.rhs = base * std::pow(t, -rate);
  } else if (s.k_tilde_omega) {
    const double root = 1.0 / (2 * ceil_half(m));
    s.rhs = (1.0 + std::sqrt(*s.k_tilde_omega)) * std::pow(base, root) / std::pow(t, rate * root);
  }

  if (m == 0 && d >= std::max(2.0, 0.25 / r2)) {
    s.n_breve_simplified = std::pow(floor5, -5.0) + 1.0;
  } else if (m >= 1 && d >= m) {
    s.n_breve_simplified = std::pow(std::max(1.0 / floor5, 1.0 / r1), (4.0 * m + 2.0) / m) + 1.0;
  }
  return s;
}

double lemma44_rhs(double alpha_c, double beta_c, int n) {
  if (!(alpha_c > 0.0)) throw InputError("lemma44_rhs: alpha_c must be positive");
  if (!(beta_c >= 0.0)) throw InputError("lemma44_rhs: beta_c must be nonnegative");
  if (n < 1) throw InputError("lemma44_rhs: n must be >= 1");
  return (1.0 + std::sqrt(beta_c)) * std::pow(2.0 * alpha_c, 1.0 / (2 * ceil_half(n)));
}

}  // namespace spbzo
