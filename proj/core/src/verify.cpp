#include "spbzo/verify.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "spbzo/catalog.hpp"
#include "spbzo/constants.hpp"
#include "spbzo/errors.hpp"
#include "spbzo/lambert_w.hpp"
#include "spbzo/rng.hpp"
#include "spbzo/smoothing.hpp"
#include "spbzo/stationarity.hpp"

namespace spbzo {

namespace {

constexpr const char* kLemmaMembers[] = {"QUAD", "QUART", "ABS1D", "PW1D", "RELU-NET"};

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

SpbFunctionPtr member(const char* id, const VerifyOptions& opt) {
  auto fn = make_function(id);
  if (opt.certificate_scale == 1.0) return fn;
  const auto& c = fn->certificate;
  return with_certificate(*fn, SpbCertificate(c.r1() * opt.certificate_scale,
                                               c.r2() * opt.certificate_scale, c.m()));
}

CheckResult from_inequality(std::string name, const InequalityReport& rep) {
  return {std::move(name), rep.passed(), -rep.max_excess,
          std::to_string(rep.violations) + "/" + std::to_string(rep.checked) +
              " violations, max lhs/rhs " + fmt_num(rep.max_ratio)};
}

void descent_and_approx(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  const int n = opt.quick ? 100 : 1000;
  std::uint64_t stream = 0;
  for (const char* id : kLemmaMembers) {
    const auto fn = member(id, opt);
    out.push_back(from_inequality(std::string("descent/") + id,
                                  check_descent_lemma(*fn, 0.05, 1.0, n, derive_seed(opt.seed, stream++))));
    out.push_back(from_inequality(std::string("approx/") + id,
                                  check_approx_error(*fn, 0.05, 1.0, n, derive_seed(opt.seed, stream++))));
  }
}

void moments(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  const int n = opt.quick ? 10000 : 100000;
  const int points = opt.quick ? 3 : 10;
  NormalStream rng(derive_seed(opt.seed, 100));
  std::uint64_t stream = 1000;
  for (const char* id : kLemmaMembers) {
    const auto fn = member(id, opt);
    for (int p : {1, 2, 4}) {
      CheckResult r{std::string("moment/") + id + "/p=" + std::to_string(p), true,
                    std::numeric_limits<double>::infinity(), ""};
      int bad = 0;
      for (int i = 0; i < points; ++i) {
        const Vec x = rng.uniform_in_ball(Vec::Zero(fn->dim), 3.0);
        const double sigma = rng.uniform(0.05, 1.0);
        const auto rep = check_moment_bound(*fn, x, sigma, p, n, derive_seed(opt.seed, stream++));
        r.margin = std::min(r.margin, rep.bound * (1.0 + rep.slack) - rep.estimate);
        if (!rep.satisfied) ++bad;
      }
      r.passed = bad == 0;
      r.detail = std::to_string(bad) + "/" + std::to_string(points) + " points over the bound";
      out.push_back(std::move(r));
    }
  }
}

// x ~ N(0, s^2 I_2) and g(x) = 2 alpha (1 + ||x||^n) 1{x_1 > 0}, so that
// E||x||^2 = 2 s^2 and E[g / (1 + ||x||^n)] = alpha hold exactly.
void lemma44(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  const int samples = opt.quick ? 20000 : 200000;
  const double s = 0.7;
  const double alpha = 1.0;
  const double beta = 2.0 * s * s;
  for (int n = 1; n <= 4; ++n) {
    NormalStream rng(derive_seed(opt.seed, 200 + n));
    const double expo = 1.0 / (2.0 * ((n + 1) / 2));
    double mean = 0.0, m2 = 0.0;
    for (int i = 1; i <= samples; ++i) {
      const Vec x = s * rng.normal_vec(2);
      const double g = x[0] > 0.0 ? 2.0 * alpha * (1.0 + norm_pow(x, n)) : 0.0;
      const double v = std::pow(g, expo);
      const double delta = v - mean;
      mean += delta / i;
      m2 += delta * (v - mean);
    }
    const double se = std::sqrt(m2 / (samples - 1.0) / samples);
    const double rhs = lemma44_rhs(alpha, beta, n);
    out.push_back({"lemma44/n=" + std::to_string(n), mean <= rhs + 4.0 * se, rhs - mean,
                   "E[g^(1/(2ceil(n/2)))] ~ " + fmt_num(mean) + " +- " + fmt_num(se) + " vs " +
                       fmt_num(rhs)});
  }
}

void tails(std::vector<CheckResult>& out) {
  for (int d : {1, 2, 5, 10}) {
    for (int e = 1; e <= 6; ++e) {
      const double nu = std::pow(10.0, -e);
      const double radius = lemma37_radius(d, nu);
      const auto tc = tail_radius_check(d, nu, radius);
      out.push_back({"tail/d=" + std::to_string(d) + "/nu=1e-" + std::to_string(e), tc.bound_satisfied,
                     nu - tc.integral, "M = " + fmt_num(radius) + ", integral " + fmt_num(tc.integral)});
    }
  }
}

void lambert(std::vector<CheckResult>& out) {
  const double inv_e = std::exp(-1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    // Half the grid is linear in (-1/e, 0), half logarithmic toward 0.
    const double t = i < 500 ? -inv_e * (i + 0.5) / 500.0 : -inv_e * std::pow(10.0, -12.0 * (i - 499) / 500.0);
    const auto w = w_minus1(t);
    worst = std::max(worst, std::abs(w.value * std::exp(w.value) - t) / std::abs(t));
  }
  out.push_back({"lambert/round_trip", worst <= 1e-9, 1e-9 - worst, "max relative error " + fmt_num(worst)});

  const double at_branch = std::abs(w_minus1(-inv_e).value + 1.0);
  out.push_back({"lambert/branch_point", at_branch <= 1e-9, 1e-9 - at_branch, "|W(-1/e) + 1|"});
  const double at_two = std::abs(w_minus1(-2.0 * std::exp(-2.0)).value + 2.0);
  out.push_back({"lambert/minus_two", at_two <= 1e-9, 1e-9 - at_two, "|W(-2/e^2) + 2|"});

  const double c = std::numbers::e / (std::numbers::e - 1.0);
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 100; ++i) {
    const double h = 0.1 * i / 101.0;
    worst_gap = std::min(worst_gap, w_minus1(-h).value - c * std::log(h));
  }
  out.push_back({"lambert/log_lower_bound", worst_gap >= 0.0, worst_gap,
                 "min of W(-h) - e/(e-1) ln h over (0, 1/10)"});
}

void inclusion(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  const int points = opt.quick ? 5 : 20;
  for (const char* id : {"ABS1D", "PW1D"}) {
    const auto fn = member(id, opt);
    NormalStream rng(derive_seed(opt.seed, 300));
    for (double eps : {0.3, 0.1, 0.03}) {
      for (double delta : {0.5, 0.1}) {
        const double sigma = goldstein_sigma_rule(fn->certificate, 1, eps, delta).sigma_bar;
        double margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < points; ++i) {
          const auto chk = check_inclusion_thm38(*fn, rng.uniform(-3.0, 3.0), sigma, delta, eps);
          margin = std::min(margin, chk.margin);
        }
        out.push_back({std::string("inclusion/") + id + "/eps=" + fmt_num(eps) + "/delta=" + fmt_num(delta),
                       margin >= -1e-8, margin, "sigma_bar = " + fmt_num(sigma)});
      }
    }
  }
}

void consistency(std::vector<CheckResult>& out) {
  const std::vector<double> sigmas{1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
  const struct {
    const char* id;
    double x;
  } cases[] = {{"ABS1D", 1.0}, {"ABS1D", 0.0}, {"PW1D", 0.5}, {"PW1D", 1.0}, {"PW1D", -2.0}, {"QUAD", 0.7}};
  for (const auto& c : cases) {
    const auto fn = make_function(c.id);
    const Vec x = Vec::Constant(fn->dim, c.x);
    const auto dist = gradient_consistency_probe(*fn, x, sigmas);
    const double last = dist.back();
    out.push_back({std::string("consistency/") + c.id + "/x=" + fmt_num(c.x), last <= 1e-6, 1e-6 - last,
                   "distance at sigma 1e-3: " + fmt_num(last) + " (at sigma 1: " + fmt_num(dist.front()) + ")"});
  }
}

}  // namespace

bool VerifyReport::passed() const { return failures() == 0; }

int VerifyReport::failures() const {
  int n = 0;
  for (const auto& c : checks) n += c.passed ? 0 : 1;
  return n;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["failures"] = failures();
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"margin", std::isfinite(c.margin) ? nlohmann::json(c.margin) : nlohmann::json(nullptr)},
                   {"detail", c.detail}});
  }
  j["checks"] = arr;
  return j.dump(2);
}

std::vector<std::string> suite_ids() { return {"lemmas", "goldstein", "all"}; }

VerifyReport verify_suite(std::string_view suite_id, const VerifyOptions& options) {
  const bool lemmas = suite_id == "lemmas" || suite_id == "all";
  const bool goldstein = suite_id == "goldstein" || suite_id == "all";
  if (!lemmas && !goldstein) {
    std::string msg = suite_id.empty() ? "missing suite id" : "unknown suite '" + std::string(suite_id) + "'";
    msg += "; available suites:";
    for (const auto& s : suite_ids()) msg += " " + s;
    throw InputError(msg);
  }
  if (!(options.certificate_scale > 0.0)) throw InputError("certificate scale must be positive");
  VerifyReport rep;
  rep.suite = std::string(suite_id);
  if (lemmas) {
    descent_and_approx(options, rep.checks);
    moments(options, rep.checks);
    lemma44(options, rep.checks);
    tails(rep.checks);
    lambert(rep.checks);
  }
  if (goldstein) {
    inclusion(options, rep.checks);
    consistency(rep.checks);
  }
  return rep;
}

}  // namespace spbzo
