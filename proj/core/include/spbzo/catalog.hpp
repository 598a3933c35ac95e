#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spbzo/types.hpp"

namespace spbzo {

// Parameters (R1, R2, m) of the bound sup_{ζ ∈ ∂_C f(x)} ||ζ|| <= R1 ||x||^m + R2.
// R1 = 0 exactly when m = 0.
class SpbCertificate {
 public:
  SpbCertificate(double r1, double r2, int m);

  double r1() const { return r1_; }
  double r2() const { return r2_; }
  int m() const { return m_; }

 private:
  double r1_;
  double r2_;
  int m_;
};

// Polynomial piece sum_i coeffs[i] * y^i of a 1-D function on [lo, hi].
// lo / hi may be infinite.
struct Piece1d {
  double lo;
  double hi;
  std::vector<double> coeffs;

  double value(double y) const;
  double derivative(double y) const;
  // [min, max] of the derivative over [a, b] ⊆ [lo, hi]. Supports degree <= 4.
  std::pair<double, double> derivative_range(double a, double b) const;
};

struct SpbFunction {
  std::string id;
  std::string description;
  int dim = 1;
  std::function<double(const Vec&)> eval;
  SpbCertificate certificate{0.0, 1.0, 0};

  // Optional analytic references. Empty std::function means absent.
  std::function<Vec(const Vec&)> analytic_grad;
  std::function<double(const Vec&, double)> analytic_gs_value;
  std::function<Vec(const Vec&, double)> analytic_gs_grad;
  // Pieces covering the real line, sorted, for 1-D piecewise-C1 members.
  std::vector<Piece1d> pieces_1d;

  bool convex = false;
  std::optional<double> inf_value;
  std::optional<Vec> minimizer;
  // sup{||w|| : w minimizes f}
  std::optional<double> sup_minimizer_norm;
  // f(x) - inf f >= (mu/2) dist(x, S)^2 for ||x|| >= growth_region_min_radius.
  std::optional<double> growth_mu;
  double growth_region_min_radius = 0.0;
  // level -> sup{||x|| : f(x) <= level}
  std::function<double(double)> level_radius;

  bool has_analytic_grad() const { return static_cast<bool>(analytic_grad); }
  bool has_pieces() const { return !pieces_1d.empty(); }
  bool has_gs_closed_form() const {
    return static_cast<bool>(analytic_gs_value) && static_cast<bool>(analytic_gs_grad);
  }
};

using SpbFunctionPtr = std::shared_ptr<const SpbFunction>;

struct CatalogEntryInfo {
  std::string id;
  std::string description;
  int default_dim;
  bool variable_dim;
};

std::vector<CatalogEntryInfo> catalog_listing();

// Build a catalog member. `dim` only applies to members with variable
// dimension (QUAD, QUART); for fixed members it must be empty or match.
SpbFunctionPtr make_function(std::string_view id, std::optional<int> dim = std::nullopt);

// Accepts "ID" or "ID:dim".
SpbFunctionPtr make_function_from_spec(std::string_view spec);

// f ≡ value on R^dim with certificate (0, 1, 0).
SpbFunctionPtr make_constant_function(double value, int dim);

// Same member, different certificate (used to exercise failing checks).
SpbFunctionPtr with_certificate(const SpbFunction& fn, SpbCertificate cert);

double evaluate(const SpbFunction& fn, const Vec& x);

// Gradient at a differentiable point from analytic_grad or pieces_1d.
Vec reference_gradient(const SpbFunction& fn, const Vec& x);

// R1 ||x||^m + R2.
double clarke_norm_bound(const SpbCertificate& cert, const Vec& x);

// (2^{m-1} R1 ||x||^m + 2^{m-1} R1 ||y - x||^m + R2) ||x - y||.
double lipschitz_envelope(const SpbCertificate& cert, const Vec& x, const Vec& y);

struct CertificateReport {
  int samples = 0;
  int checked = 0;
  int violations = 0;
  double max_ratio = 0.0;
};

CertificateReport validate_certificate(const SpbFunction& fn, int samples, double radius,
                                       std::uint64_t seed);

// Weights of the fixed ReLU network and least-squares data. The same numbers
// are documented in core/data/networks.json.
namespace network_data {

inline constexpr int kReluInputs = 2;
inline constexpr int kReluHidden = 3;
inline constexpr double kReluW1[kReluHidden][kReluInputs] = {{1.0, -0.5}, {-0.7, 0.3}, {0.4, 0.9}};
inline constexpr double kReluB1[kReluHidden] = {0.2, -0.1, 0.0};
inline constexpr double kReluW2[kReluHidden] = {0.8, -1.1, 0.6};
inline constexpr double kReluB2 = 0.05;
inline constexpr double kReluR2 = 2.33;

inline constexpr int kNnlsPoints = 4;
inline constexpr double kNnlsX[kNnlsPoints] = {-1.0, -0.5, 0.5, 1.0};
inline constexpr double kNnlsY[kNnlsPoints] = {0.5, -0.2, 0.3, 1.0};
inline constexpr double kNnlsR1 = 11.87;
inline constexpr double kNnlsR2 = 5.37;
inline constexpr int kNnlsM = 3;

}  // namespace network_data

}  // namespace spbzo
