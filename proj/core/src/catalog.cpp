#include "spbzo/catalog.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "spbzo/rng.hpp"
#include "spbzo/special.hpp"

namespace spbzo {

SpbCertificate::SpbCertificate(double r1, double r2, int m) : r1_(r1), r2_(r2), m_(m) {
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw InputError("certificate: R2 must be positive");
  if (!(r1 >= 0.0) || !std::isfinite(r1)) throw InputError("certificate: R1 must be nonnegative");
  if (m < 0) throw InputError("certificate: m must be nonnegative");
  if ((r1 == 0.0) != (m == 0)) throw InputError("certificate: R1 = 0 if and only if m = 0");
}

double Piece1d::value(double y) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
  return acc;
}

double Piece1d::derivative(double y) const {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * y + static_cast<double>(i) * coeffs[i];
  return acc;
}

std::pair<double, double> Piece1d::derivative_range(double a, double b) const {
  if (coeffs.size() > 5) throw UnsupportedError("Piece1d: degree above 4");
  std::vector<double> candidates{a, b};
  // Critical points of f' are roots of f'' = c2*2 + c3*6 y + c4*12 y^2.
  auto c = [&](std::size_t i) { return i < coeffs.size() ? coeffs[i] : 0.0; };
  const double q0 = 2.0 * c(2), q1 = 6.0 * c(3), q2 = 12.0 * c(4);
  if (q2 != 0.0) {
    const double disc = q1 * q1 - 4.0 * q2 * q0;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      candidates.push_back((-q1 + s) / (2.0 * q2));
      candidates.push_back((-q1 - s) / (2.0 * q2));
    }
  } else if (q1 != 0.0) {
    candidates.push_back(-q0 / q1);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double y : candidates) {
    if (y < a || y > b) continue;
    const double d = derivative(y);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

namespace {

// E[u^k 1{alpha <= u <= beta}] for u ~ N(0,1), k = 0..kmax.
std::vector<double> truncated_moments(double alpha, double beta, int kmax) {
  std::vector<double> mom(static_cast<std::size_t>(kmax) + 1, 0.0);
  const double pa = std::isinf(alpha) ? 0.0 : normal_pdf(alpha);
  const double pb = std::isinf(beta) ? 0.0 : normal_pdf(beta);
  mom[0] = normal_interval_prob(alpha, beta);
  if (kmax >= 1) mom[1] = pa - pb;
  for (int k = 2; k <= kmax; ++k) {
    const double ta = std::isinf(alpha) ? 0.0 : pow_int(alpha, k - 1) * pa;
    const double tb = std::isinf(beta) ? 0.0 : pow_int(beta, k - 1) * pb;
    mom[k] = (k - 1) * mom[k - 2] + ta - tb;
  }
  return mom;
}

// E[p(x + sigma u) 1{lo <= x + sigma u <= hi}] for polynomial coefficients p.
double smoothed_piece(const std::vector<double>& p, double lo, double hi, double x, double sigma) {
  if (p.empty()) return 0.0;
  const int deg = static_cast<int>(p.size()) - 1;
  const double alpha = (lo - x) / sigma;
  const double beta = (hi - x) / sigma;
  if (!(alpha < beta)) return 0.0;
  const auto mom = truncated_moments(alpha, beta, deg);
  // (x + sigma u)^i = sum_k C(i,k) x^{i-k} sigma^k u^k
  double total = 0.0;
  for (int i = 0; i <= deg; ++i) {
    if (p[i] == 0.0) continue;
    double binom = 1.0;
    double acc = 0.0;
    for (int k = 0; k <= i; ++k) {
      acc += binom * pow_int(x, i - k) * pow_int(sigma, k) * mom[k];
      binom = binom * (i - k) / (k + 1);
    }
    total += p[i] * acc;
  }
  return total;
}

std::vector<double> derivative_coeffs(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

double pieces_gs_value(const std::vector<Piece1d>& pieces, double x, double sigma) {
  double total = 0.0;
  for (const auto& pc : pieces) total += smoothed_piece(pc.coeffs, pc.lo, pc.hi, x, sigma);
  return total;
}

double pieces_gs_grad(const std::vector<Piece1d>& pieces, double x, double sigma) {
  double total = 0.0;
  for (const auto& pc : pieces) {
    total += smoothed_piece(derivative_coeffs(pc.coeffs), pc.lo, pc.hi, x, sigma);
  }
  return total;
}

void attach_piecewise_smoothing(SpbFunction& fn) {
  auto pieces = fn.pieces_1d;
  fn.analytic_gs_value = [pieces](const Vec& x, double sigma) {
    return pieces_gs_value(pieces, x[0], sigma);
  };
  fn.analytic_gs_grad = [pieces](const Vec& x, double sigma) {
    Vec g(1);
    g[0] = pieces_gs_grad(pieces, x[0], sigma);
    return g;
  };
  fn.analytic_grad = [pieces](const Vec& x) {
    Vec g(1);
    for (const auto& pc : pieces) {
      if (x[0] >= pc.lo && x[0] <= pc.hi) {
        g[0] = pc.derivative(x[0]);
        return g;
      }
    }
    throw InputError("point not covered by pieces");
  };
}

constexpr double kInf = std::numeric_limits<double>::infinity();

SpbFunction make_quad(int dim) {
  SpbFunction fn;
  fn.id = "QUAD";
  fn.description = "f(x) = 0.5 ||x||^2";
  fn.dim = dim;
  fn.eval = [](const Vec& x) { return 0.5 * x.squaredNorm(); };
  fn.certificate = SpbCertificate(1.0, 0.1, 1);
  fn.analytic_grad = [](const Vec& x) { return Vec(x); };
  fn.analytic_gs_value = [dim](const Vec& x, double s) {
    return 0.5 * x.squaredNorm() + 0.5 * s * s * dim;
  };
  fn.analytic_gs_grad = [](const Vec& x, double) { return Vec(x); };
  fn.convex = true;
  fn.inf_value = 0.0;
  fn.minimizer = Vec::Zero(dim);
  fn.sup_minimizer_norm = 0.0;
  fn.growth_mu = 1.0;
  fn.level_radius = [](double level) { return level <= 0.0 ? 0.0 : std::sqrt(2.0 * level); };
  return fn;
}

SpbFunction make_quart(int dim) {
  SpbFunction fn;
  fn.id = "QUART";
  fn.description = "f(x) = ||x||^4";
  fn.dim = dim;
  fn.eval = [](const Vec& x) {
    const double a = x.squaredNorm();
    return a * a;
  };
  fn.certificate = SpbCertificate(4.0, 0.1, 3);
  fn.analytic_grad = [](const Vec& x) { return Vec(4.0 * x.squaredNorm() * x); };
  // E||x + s u||^4 = a^2 + (4 + 2d) s^2 a + s^4 d (d + 2), a = ||x||^2
  fn.analytic_gs_value = [dim](const Vec& x, double s) {
    const double a = x.squaredNorm();
    const double s2 = s * s;
    return a * a + (4.0 + 2.0 * dim) * s2 * a + s2 * s2 * dim * (dim + 2.0);
  };
  fn.analytic_gs_grad = [dim](const Vec& x, double s) {
    return Vec((4.0 * x.squaredNorm() + (8.0 + 4.0 * dim) * s * s) * x);
  };
  fn.convex = true;
  fn.inf_value = 0.0;
  fn.minimizer = Vec::Zero(dim);
  fn.sup_minimizer_norm = 0.0;
  // ||x||^4 >= (mu/2)||x||^2 needs ||x||^2 >= mu/2.
  fn.growth_mu = 0.5;
  fn.growth_region_min_radius = 0.5;
  fn.level_radius = [](double level) { return level <= 0.0 ? 0.0 : std::pow(level, 0.25); };
  return fn;
}

SpbFunction make_abs1d() {
  SpbFunction fn;
  fn.id = "ABS1D";
  fn.description = "f(x) = |x|";
  fn.dim = 1;
  fn.eval = [](const Vec& x) { return std::abs(x[0]); };
  fn.certificate = SpbCertificate(0.0, 1.0, 0);
  fn.pieces_1d = {Piece1d{-kInf, 0.0, {0.0, -1.0}}, Piece1d{0.0, kInf, {0.0, 1.0}}};
  attach_piecewise_smoothing(fn);
  fn.convex = true;
  fn.inf_value = 0.0;
  fn.minimizer = Vec::Zero(1);
  fn.sup_minimizer_norm = 0.0;
  fn.level_radius = [](double level) { return std::max(level, 0.0); };
  return fn;
}

SpbFunction make_pw1d() {
  SpbFunction fn;
  fn.id = "PW1D";
  fn.description = "f(x) = max{x^2, |x|} (kinks at 0 and +-1)";
  fn.dim = 1;
  fn.eval = [](const Vec& x) { return std::max(x[0] * x[0], std::abs(x[0])); };
  fn.certificate = SpbCertificate(2.0, 1.0, 1);
  fn.pieces_1d = {Piece1d{-kInf, -1.0, {0.0, 0.0, 1.0}}, Piece1d{-1.0, 0.0, {0.0, -1.0}},
                  Piece1d{0.0, 1.0, {0.0, 1.0}}, Piece1d{1.0, kInf, {0.0, 0.0, 1.0}}};
  attach_piecewise_smoothing(fn);
  fn.convex = true;
  fn.inf_value = 0.0;
  fn.minimizer = Vec::Zero(1);
  fn.sup_minimizer_norm = 0.0;
  fn.growth_mu = 2.0;
  fn.level_radius = [](double level) {
    if (level <= 0.0) return 0.0;
    return level <= 1.0 ? level : std::sqrt(level);
  };
  return fn;
}

SpbFunction make_relu_net() {
  namespace nd = network_data;
  Eigen::Matrix<double, nd::kReluHidden, nd::kReluInputs> w1;
  Eigen::Matrix<double, nd::kReluHidden, 1> b1, w2;
  for (int i = 0; i < nd::kReluHidden; ++i) {
    for (int j = 0; j < nd::kReluInputs; ++j) w1(i, j) = nd::kReluW1[i][j];
    b1[i] = nd::kReluB1[i];
    w2[i] = nd::kReluW2[i];
  }
  const double b2 = nd::kReluB2;

  SpbFunction fn;
  fn.id = "RELU-NET";
  fn.description = "2-3-1 network, ReLU hidden layer, linear output (fixed weights)";
  fn.dim = nd::kReluInputs;
  fn.eval = [=](const Vec& x) {
    const Eigen::Matrix<double, nd::kReluHidden, 1> z = w1 * x + b1;
    return w2.dot(z.cwiseMax(0.0)) + b2;
  };
  fn.certificate = SpbCertificate(0.0, nd::kReluR2, 0);
  fn.analytic_grad = [=](const Vec& x) {
    const Eigen::Matrix<double, nd::kReluHidden, 1> z = w1 * x + b1;
    Eigen::Matrix<double, nd::kReluHidden, 1> act;
    for (int i = 0; i < nd::kReluHidden; ++i) act[i] = z[i] > 0.0 ? w2[i] : 0.0;
    return Vec(w1.transpose() * act);
  };
  // E[max(0, a + s z)] = a Phi(a/s) + s phi(a/s) per hidden unit.
  fn.analytic_gs_value = [=](const Vec& x, double sigma) {
    double total = b2;
    for (int i = 0; i < nd::kReluHidden; ++i) {
      const double a = w1.row(i).dot(x) + b1[i];
      const double s = sigma * w1.row(i).norm();
      total += w2[i] * (a * normal_cdf(a / s) + s * normal_pdf(a / s));
    }
    return total;
  };
  fn.analytic_gs_grad = [=](const Vec& x, double sigma) {
    Vec g = Vec::Zero(nd::kReluInputs);
    for (int i = 0; i < nd::kReluHidden; ++i) {
      const double a = w1.row(i).dot(x) + b1[i];
      const double s = sigma * w1.row(i).norm();
      g += w2[i] * normal_cdf(a / s) * w1.row(i).transpose();
    }
    return g;
  };
  fn.convex = false;
  return fn;
}

// Parameters w = (w1, b1, w2, b2, a1, a2); psi(t; w) = a1 relu(w1 t + b1) + a2 relu(w2 t + b2).
SpbFunction make_nnls() {
  namespace nd = network_data;
  SpbFunction fn;
  fn.id = "NNLS";
  fn.description = "least-squares loss of a 1-2-1 ReLU network over 6 parameters, 4 data points";
  fn.dim = 6;
  fn.eval = [](const Vec& w) {
    double loss = 0.0;
    for (int i = 0; i < nd::kNnlsPoints; ++i) {
      const double t = nd::kNnlsX[i];
      const double psi = w[4] * std::max(0.0, w[0] * t + w[1]) + w[5] * std::max(0.0, w[2] * t + w[3]);
      const double r = nd::kNnlsY[i] - psi;
      loss += r * r;
    }
    return loss;
  };
  fn.certificate = SpbCertificate(nd::kNnlsR1, nd::kNnlsR2, nd::kNnlsM);
  fn.analytic_grad = [](const Vec& w) {
    Vec g = Vec::Zero(6);
    for (int i = 0; i < nd::kNnlsPoints; ++i) {
      const double t = nd::kNnlsX[i];
      const double z1 = w[0] * t + w[1];
      const double z2 = w[2] * t + w[3];
      const double h1 = std::max(0.0, z1);
      const double h2 = std::max(0.0, z2);
      const double r = nd::kNnlsY[i] - (w[4] * h1 + w[5] * h2);
      const double on1 = z1 > 0.0 ? 1.0 : 0.0;
      const double on2 = z2 > 0.0 ? 1.0 : 0.0;
      g[0] += -2.0 * r * w[4] * on1 * t;
      g[1] += -2.0 * r * w[4] * on1;
      g[2] += -2.0 * r * w[5] * on2 * t;
      g[3] += -2.0 * r * w[5] * on2;
      g[4] += -2.0 * r * h1;
      g[5] += -2.0 * r * h2;
    }
    return g;
  };
  fn.convex = false;
  return fn;
}

struct Registry {
  const char* id;
  const char* description;
  int default_dim;
  bool variable_dim;
};

constexpr std::array<Registry, 6> kRegistry{{
    {"QUAD", "f(x) = 0.5 ||x||^2; m=1, R1=1, R2=0.1; convex", 2, true},
    {"QUART", "f(x) = ||x||^4; m=3, R1=4, R2=0.1; convex, level-bounded", 2, true},
    {"ABS1D", "f(x) = |x|; m=0, R1=0, R2=1; convex", 1, false},
    {"PW1D", "f(x) = max{x^2, |x|}; m=1, R1=2, R2=1; convex, kinks at 0, +-1", 1, false},
    {"RELU-NET", "2-3-1 ReLU network; m=0, R2=2.33", 2, false},
    {"NNLS", "least-squares loss of a tiny ReLU network; d=6, m=3, R1=11.87, R2=5.37", 6, false},
}};

}  // namespace

std::vector<CatalogEntryInfo> catalog_listing() {
  std::vector<CatalogEntryInfo> out;
  for (const auto& r : kRegistry) out.push_back({r.id, r.description, r.default_dim, r.variable_dim});
  return out;
}

SpbFunctionPtr make_function(std::string_view id, std::optional<int> dim) {
  const auto it = std::find_if(kRegistry.begin(), kRegistry.end(),
                               [&](const Registry& r) { return id == r.id; });
  if (it == kRegistry.end()) throw InputError("unknown catalog function: " + std::string(id));
  if (dim && *dim < 1) throw InputError("dimension must be positive");
  if (dim && !it->variable_dim && *dim != it->default_dim) {
    throw InputError(std::string(it->id) + " has fixed dimension " + std::to_string(it->default_dim));
  }
  const int d = dim.value_or(it->default_dim);
  if (id == "QUAD") return std::make_shared<const SpbFunction>(make_quad(d));
  if (id == "QUART") return std::make_shared<const SpbFunction>(make_quart(d));
  if (id == "ABS1D") return std::make_shared<const SpbFunction>(make_abs1d());
  if (id == "PW1D") return std::make_shared<const SpbFunction>(make_pw1d());
  if (id == "RELU-NET") return std::make_shared<const SpbFunction>(make_relu_net());
  return std::make_shared<const SpbFunction>(make_nnls());
}

SpbFunctionPtr make_function_from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return make_function(spec);
  const auto tail = spec.substr(colon + 1);
  int dim = 0;
  const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), dim);
  if (ec != std::errc() || ptr != tail.data() + tail.size()) {
    throw InputError("bad dimension in function spec: " + std::string(spec));
  }
  return make_function(spec.substr(0, colon), dim);
}

SpbFunctionPtr make_constant_function(double value, int dim) {
  if (dim < 1) throw InputError("dimension must be positive");
  SpbFunction fn;
  fn.id = "CONST";
  fn.description = "constant function";
  fn.dim = dim;
  fn.eval = [value](const Vec&) { return value; };
  fn.certificate = SpbCertificate(0.0, 1.0, 0);
  fn.analytic_grad = [dim](const Vec&) { return Vec(Vec::Zero(dim)); };
  fn.analytic_gs_value = [value](const Vec&, double) { return value; };
  fn.analytic_gs_grad = [dim](const Vec&, double) { return Vec(Vec::Zero(dim)); };
  fn.convex = true;
  fn.inf_value = value;
  fn.level_radius = [](double) { return std::numeric_limits<double>::infinity(); };
  return std::make_shared<const SpbFunction>(std::move(fn));
}

SpbFunctionPtr with_certificate(const SpbFunction& fn, SpbCertificate cert) {
  SpbFunction copy = fn;
  copy.certificate = cert;
  return std::make_shared<const SpbFunction>(std::move(copy));
}

double evaluate(const SpbFunction& fn, const Vec& x) {
  require_dim(x, fn.dim, "evaluate");
  return fn.eval(x);
}

Vec reference_gradient(const SpbFunction& fn, const Vec& x) {
  require_dim(x, fn.dim, "reference_gradient");
  if (fn.analytic_grad) return fn.analytic_grad(x);
  throw UnsupportedError(fn.id + ": no analytic gradient");
}

double clarke_norm_bound(const SpbCertificate& cert, const Vec& x) {
  return cert.r1() * norm_pow(x, cert.m()) + cert.r2();
}

double lipschitz_envelope(const SpbCertificate& cert, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw InputError("lipschitz_envelope: dimension mismatch");
  const int m = cert.m();
  const double dist = (x - y).norm();
  if (m == 0) return cert.r2() * dist;
  const double c = std::ldexp(cert.r1(), m - 1);
  return (c * norm_pow(x, m) + c * pow_int(dist, m) + cert.r2()) * dist;
}

CertificateReport validate_certificate(const SpbFunction& fn, int samples, double radius,
                                       std::uint64_t seed) {
  if (samples < 1) throw InputError("validate_certificate: samples must be >= 1");
  if (!(radius > 0.0)) throw InputError("validate_certificate: radius must be positive");
  if (!fn.has_analytic_grad()) throw UnsupportedError(fn.id + ": no analytic gradient or pieces");
  CertificateReport report;
  report.samples = samples;
  NormalStream rng(seed);
  const Vec center = Vec::Zero(fn.dim);
  for (int i = 0; i < samples; ++i) {
    const Vec x = rng.uniform_in_ball(center, radius);
    const double gnorm = fn.analytic_grad(x).norm();
    const double bound = clarke_norm_bound(fn.certificate, x);
    ++report.checked;
    report.max_ratio = std::max(report.max_ratio, gnorm / bound);
    if (gnorm > bound) ++report.violations;
  }
  return report;
}

}  // namespace spbzo
