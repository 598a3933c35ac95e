#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "spbzo/catalog.hpp"
#include "spbzo/smoothing.hpp"

using namespace spbzo;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

}  // namespace

TEST(ClosedForms, MatchMpmath) {
  const auto abs = make_function("ABS1D");
  EXPECT_NEAR(abs->analytic_gs_value(v1(0.7), 0.4), oracle::kSmoothAbs_Value, 1e-15);
  EXPECT_NEAR(abs->analytic_gs_grad(v1(0.7), 0.4)[0], oracle::kSmoothAbs_Grad, 1e-15);
  const auto pw = make_function("PW1D");
  EXPECT_NEAR(pw->analytic_gs_value(v1(0.9), 0.3), oracle::kSmoothPwA_Value, 1e-14);
  EXPECT_NEAR(pw->analytic_gs_grad(v1(0.9), 0.3)[0], oracle::kSmoothPwA_Grad, 1e-14);
  EXPECT_NEAR(pw->analytic_gs_value(v1(-1.2), 0.8), oracle::kSmoothPwB_Value, 1e-14);
  EXPECT_NEAR(pw->analytic_gs_grad(v1(-1.2), 0.8)[0], oracle::kSmoothPwB_Grad, 1e-14);
  EXPECT_NEAR(pw->analytic_gs_value(v1(0.0), 0.5), oracle::kSmoothPwC_Value, 1e-14);
  EXPECT_NEAR(pw->analytic_gs_grad(v1(0.0), 0.5)[0], 0.0, 1e-15);
  EXPECT_NEAR(make_function("QUART")->analytic_gs_value(v2(0.5, -1.0), 0.2), oracle::kSmoothQuart_Value, 1e-14);
}

TEST(MonteCarlo, EstimatorsCoverTheClosedForms) {
  for (const char* id : {"ABS1D", "QUAD", "PW1D", "RELU-NET"}) {
    const auto fn = make_function(id);
    const Vec x = Vec::Constant(fn->dim, 0.6);
    const double s = 0.3;
    const int n = 200000;
    const auto val = gs_value_mc(*fn, x, s, n, 17);
    EXPECT_LE(std::abs(val.mean - fn->analytic_gs_value(x, s)), 4.0 * val.stderr_) << id;
    const Vec g = fn->analytic_gs_grad(x, s);
    const auto one = gs_grad_onepoint_mc(*fn, x, s, n, 18);
    const auto two = gs_grad_twopoint_mc(*fn, x, s, n, 18);
    for (int j = 0; j < fn->dim; ++j) {
      EXPECT_LE(std::abs(one.mean[j] - g[j]), 4.0 * one.stderr_[j]) << id;
      EXPECT_LE(std::abs(two.mean[j] - g[j]), 4.0 * two.stderr_[j]) << id;
    }
    EXPECT_EQ(one.n, n);
  }
}

TEST(MonteCarlo, TwoPointHasSmallerVarianceForSmallSigma) {
  const auto fn = make_function("QUAD");
  const Vec x = v2(3.0, -2.0);
  const auto one = gs_grad_onepoint_mc(*fn, x, 0.05, 20000, 3);
  const auto two = gs_grad_twopoint_mc(*fn, x, 0.05, 20000, 3);
  EXPECT_LT(two.variance.sum(), one.variance.sum());
}

TEST(MonteCarlo, SameSeedSameEstimate) {
  const auto fn = make_function("PW1D");
  const auto a = gs_grad_twopoint_mc(*fn, v1(0.2), 0.4, 1000, 99);
  const auto b = gs_grad_twopoint_mc(*fn, v1(0.2), 0.4, 1000, 99);
  const auto c = gs_grad_twopoint_mc(*fn, v1(0.2), 0.4, 1000, 100);
  EXPECT_EQ(a.mean[0], b.mean[0]);
  EXPECT_EQ(a.stderr_[0], b.stderr_[0]);
  EXPECT_NE(a.mean[0], c.mean[0]);
}

TEST(MonteCarlo, RejectsBadArguments) {
  const auto fn = make_function("QUAD");
  EXPECT_THROW(gs_value_mc(*fn, v2(0, 0), 0.0, 10, 1), InputError);
  EXPECT_THROW(gs_value_mc(*fn, v2(0, 0), 0.1, 0, 1), InputError);
  EXPECT_THROW(gs_grad_onepoint_mc(*fn, v1(0), 0.1, 10, 1), InputError);
}

TEST(Oracles, FallBackToQuadrature) {
  const auto fn = make_function("ABS1D");
  const auto plain = with_certificate(*fn, fn->certificate);
  auto stripped = std::make_shared<SpbFunction>(*plain);
  stripped->analytic_gs_value = nullptr;
  stripped->analytic_gs_grad = nullptr;
  const auto val = gs_value_oracle(*stripped, v1(0.7), 0.4);
  EXPECT_NEAR(val.value, oracle::kSmoothAbs_Value, 1e-10);
  EXPECT_GT(val.error, 0.0);
  EXPECT_NEAR(gs_grad_oracle(*stripped, v1(0.7), 0.4).value[0], oracle::kSmoothAbs_Grad, 1e-7);
  EXPECT_EQ(gs_value_oracle(*fn, v1(0.7), 0.4).error, 0.0);
}

TEST(Lemmas, DescentAndApproximationHoldOnTheCatalog) {
  for (const char* id : {"QUAD", "QUART", "ABS1D", "PW1D", "RELU-NET"}) {
    const auto fn = make_function(id);
    const auto d = check_descent_lemma(*fn, 0.05, 1.0, 300, 21);
    EXPECT_TRUE(d.passed()) << id << " max excess " << d.max_excess;
    EXPECT_EQ(d.checked, 300);
    const auto a = check_approx_error(*fn, 0.05, 1.0, 300, 22);
    EXPECT_TRUE(a.passed()) << id << " max excess " << a.max_excess;
    EXPECT_LE(a.max_ratio, 1.0) << id;
  }
}

TEST(Lemmas, ShrunkCertificatesFail) {
  for (const char* id : {"QUAD", "ABS1D", "PW1D"}) {
    const auto fn = make_function(id);
    const auto& c = fn->certificate;
    const auto bad = with_certificate(*fn, SpbCertificate(c.r1() * 0.01, c.r2() * 0.01, c.m()));
    EXPECT_FALSE(check_descent_lemma(*bad, 0.05, 1.0, 300, 21).passed()) << id;
    EXPECT_FALSE(check_approx_error(*bad, 0.05, 1.0, 300, 22).passed()) << id;
  }
}

TEST(Lemmas, MomentBound) {
  for (const char* id : {"QUAD", "ABS1D", "PW1D"}) {
    const auto fn = make_function(id);
    for (int p : {1, 2, 4}) {
      const auto r = check_moment_bound(*fn, Vec::Constant(fn->dim, 0.8), 0.5, p, 50000, 31);
      EXPECT_TRUE(r.satisfied) << id << " p=" << p << " est " << r.estimate << " bound " << r.bound;
      EXPECT_EQ(r.p, p);
    }
  }
}
