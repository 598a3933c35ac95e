#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "spbzo/catalog.hpp"
#include "spbzo/constants.hpp"
#include "spbzo/errors.hpp"

using namespace spbzo;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v1(double a) { return Vec::Constant(1, a); }

void expect_rel(double got, double want, double tol = 1e-13) {
  EXPECT_NEAR(got, want, tol * std::abs(want)) << "want " << want;
}

}  // namespace

TEST(SmoothingConstants, MatchMpmath) {
  const auto q = smoothing_constants(SpbCertificate(1.0, 0.1, 1), 0.3, 2);
  expect_rel(q.frak_a, oracle::kConstQuad_FrakA);
  expect_rel(q.frak_b, oracle::kConstQuad_FrakB);
  expect_rel(q.frak_c, oracle::kConstQuad_FrakC);
  expect_rel(q.cal_a, oracle::kConstQuad_CalA);
  expect_rel(q.cal_b, oracle::kConstQuad_CalB);
  expect_rel(q.cal_c, oracle::kConstQuad_CalC);
  const auto r = smoothing_constants(SpbCertificate(4.0, 0.1, 3), 0.5, 2);
  expect_rel(r.frak_a, oracle::kConstQuart_FrakA);
  expect_rel(r.frak_b, oracle::kConstQuart_FrakB);
  expect_rel(r.frak_c, oracle::kConstQuart_FrakC);
  expect_rel(r.cal_a, oracle::kConstQuart_CalA);
  expect_rel(r.cal_b, oracle::kConstQuart_CalB);
  expect_rel(r.cal_c, oracle::kConstQuart_CalC);
}

TEST(ApproxCoeff, MatchesMpmath) {
  const Vec x = v2(0.9, 1.2);  // ||x|| = 1.5
  expect_rel(approx_error_coeff(SpbCertificate(1.0, 0.1, 1), 0.3, 2, x), oracle::kConstQuad_M);
  expect_rel(approx_error_coeff_breve(SpbCertificate(1.0, 0.1, 1), 2, x), oracle::kConstQuad_MBreve);
  expect_rel(approx_error_coeff(SpbCertificate(4.0, 0.1, 3), 0.5, 2, x), oracle::kConstQuart_M);
  expect_rel(approx_error_coeff_breve(SpbCertificate(4.0, 0.1, 3), 2, x), oracle::kConstQuart_MBreve);
}

TEST(ApproxCoeff, WorkedExample) {
  EXPECT_DOUBLE_EQ(approx_error_coeff(SpbCertificate(1.0, 0.5, 1), 1.0, 1, v1(0.0)), 3.5);
}

TEST(MomentCoeff, MatchesMpmath) {
  const SpbCertificate q(1.0, 0.1, 1), r(4.0, 0.1, 3);
  const double qh[] = {oracle::kConstQuad_H1, oracle::kConstQuad_H2, oracle::kConstQuad_H4};
  const double qb[] = {oracle::kConstQuad_HBreve1, oracle::kConstQuad_HBreve2, oracle::kConstQuad_HBreve4};
  const double rh[] = {oracle::kConstQuart_H1, oracle::kConstQuart_H2, oracle::kConstQuart_H4};
  const double rb[] = {oracle::kConstQuart_HBreve1, oracle::kConstQuart_HBreve2, oracle::kConstQuart_HBreve4};
  const int ps[] = {1, 2, 4};
  for (int i = 0; i < 3; ++i) {
    expect_rel(moment_coeff(q, 0.3, 2, ps[i]), qh[i]);
    expect_rel(moment_coeff_breve(q, 2, ps[i]), qb[i]);
    expect_rel(moment_coeff(r, 0.5, 2, ps[i]), rh[i]);
    expect_rel(moment_coeff_breve(r, 2, ps[i]), rb[i]);
  }
}

TEST(MomentCoeff, WorkedExample) {
  // max{3, 3 + 8}
  EXPECT_DOUBLE_EQ(moment_coeff(SpbCertificate(1.0, 1.0, 1), 1.0, 1, 1), 11.0);
  EXPECT_DOUBLE_EQ(moment_coeff(SpbCertificate(1.0, 1.0, 1), 1.0, 1, 0), 1.0);
}

TEST(MomentCoeff, BreveDominatesForSigmaUpToOne) {
  for (const auto& c : {SpbCertificate(1.0, 0.1, 1), SpbCertificate(4.0, 0.1, 3), SpbCertificate(0.0, 2.0, 0),
                        SpbCertificate(2.0, 1.0, 2)}) {
    for (int d : {1, 2, 5}) {
      for (int p : {1, 2, 3, 4}) {
        for (double s : {0.01, 0.3, 1.0}) {
          EXPECT_LE(moment_coeff(c, s, d, p), moment_coeff_breve(c, d, p) * (1 + 1e-14));
          EXPECT_LE(approx_error_coeff(c, s, d, v1(0.5).replicate(d, 1)),
                    approx_error_coeff_breve(c, d, v1(0.5).replicate(d, 1)) * (1 + 1e-14));
        }
      }
    }
  }
}

TEST(Constants, LipschitzCaseReducesExactly) {
  const double r2 = 1.7;
  const SpbCertificate c(0.0, r2, 0);
  for (int d : {1, 2, 7}) {
    for (double s : {0.1, 0.8}) {
      const auto k = smoothing_constants(c, s, d);
      EXPECT_EQ(k.frak_a, r2);
      EXPECT_EQ(k.frak_b, 0.0);
      EXPECT_EQ(k.frak_c, 0.0);
      EXPECT_DOUBLE_EQ(k.cal_a, r2 * std::sqrt(d) / s);
      EXPECT_EQ(k.cal_b, 0.0);
      EXPECT_EQ(k.cal_c, 0.0);
      EXPECT_DOUBLE_EQ(approx_error_coeff(c, s, d, Vec::Ones(d)), r2 * std::sqrt(d));
      EXPECT_DOUBLE_EQ(moment_coeff(c, s, d, 2), 3.0 * r2 * r2 * (4.0 + d) * (4.0 + d));
    }
  }
}

TEST(Constants, RejectBadArguments) {
  const SpbCertificate c(1.0, 0.1, 1);
  EXPECT_THROW(smoothing_constants(c, 0.0, 2), InputError);
  EXPECT_THROW(smoothing_constants(c, 0.1, 0), InputError);
  EXPECT_THROW(moment_coeff(c, 0.1, 2, -1), InputError);
  EXPECT_THROW(approx_error_coeff(c, 0.1, 2, v1(1.0)), InputError);
}

TEST(SigmaRule, MatchesMpmath) {
  const struct {
    SpbCertificate c;
    int d;
    double eps, delta;
    double p, eta1, h, sbar, simp, m1, m2;
  } cases[] = {
      {SpbCertificate(0.0, 1.0, 0), 1, 0.1, 0.5, oracle::kRuleAbs_P, oracle::kRuleAbs_Eta1, oracle::kRuleAbs_H,
       oracle::kRuleAbs_SigmaBar, oracle::kRuleAbs_Simplified, oracle::kRuleAbs_M1, oracle::kRuleAbs_M2},
      {SpbCertificate(2.0, 1.0, 1), 1, 0.1, 0.5, oracle::kRulePw_P, oracle::kRulePw_Eta1, oracle::kRulePw_H,
       oracle::kRulePw_SigmaBar, oracle::kRulePw_Simplified, oracle::kRulePw_M1, oracle::kRulePw_M2},
      {SpbCertificate(1.0, 0.1, 1), 2, 0.3, 0.1, oracle::kRuleQuad_P, oracle::kRuleQuad_Eta1, oracle::kRuleQuad_H,
       oracle::kRuleQuad_SigmaBar, oracle::kRuleQuad_Simplified, oracle::kRuleQuad_M1, oracle::kRuleQuad_M2},
  };
  for (const auto& c : cases) {
    const auto r = goldstein_sigma_rule(c.c, c.d, c.eps, c.delta);
    expect_rel(r.cal_p, c.p);
    expect_rel(r.eta1, c.eta1);
    expect_rel(r.h, c.h, 1e-12);
    expect_rel(r.sigma_bar, c.sbar, 1e-12);
    ASSERT_TRUE(r.simplified_bound);
    expect_rel(*r.simplified_bound, c.simp, 1e-12);
    expect_rel(r.m1, c.m1);
    expect_rel(r.m2, c.m2);
  }
}

TEST(SigmaRule, SimplifiedBoundNeverExceedsSigmaBar) {
  for (const auto& c : {SpbCertificate(0.0, 1.0, 0), SpbCertificate(2.0, 1.0, 1), SpbCertificate(1.0, 0.1, 1),
                        SpbCertificate(4.0, 0.1, 3)}) {
    for (int d : {1, 2, 4}) {
      for (double eps : {0.05, 0.01, 1e-4}) {
        for (double delta : {0.9, 0.5, 0.01}) {
          const auto r = goldstein_sigma_rule(c, d, eps, delta);
          EXPECT_LE(r.sigma_bar, 1.0);
          EXPECT_GT(r.sigma_bar, 0.0);
          if (r.simplified_bound) {
            EXPECT_LE(*r.simplified_bound, r.sigma_bar * (1 + 1e-12));
          }
        }
      }
    }
  }
}

TEST(SigmaRule, SimplifiedBoundOnlyInsideItsWindow) {
  EXPECT_FALSE(goldstein_sigma_rule(SpbCertificate(0.0, 1.0, 0), 1, 2.0, 0.5).simplified_bound);
  EXPECT_FALSE(goldstein_sigma_rule(SpbCertificate(0.0, 1.0, 0), 1, 0.1, 1.5).simplified_bound);
  EXPECT_THROW(goldstein_sigma_rule(SpbCertificate(0.0, 1.0, 0), 1, 0.0, 0.5), InputError);
}

TEST(TailRadius, MatchesMpmath) {
  const struct {
    int d;
    double nu, radius, integral;
  } cases[] = {{1, 0.1, oracle::kTailRadius_d1_nu1, oracle::kTailIntegral_d1_nu1},
               {2, 0.01, oracle::kTailRadius_d2_nu2, oracle::kTailIntegral_d2_nu2},
               {5, 1e-3, oracle::kTailRadius_d5_nu3, oracle::kTailIntegral_d5_nu3},
               {10, 1e-6, oracle::kTailRadius_d10_nu6, oracle::kTailIntegral_d10_nu6}};
  for (const auto& c : cases) {
    const double r = lemma37_radius(c.d, c.nu);
    expect_rel(r, c.radius, 1e-13);
    const auto t = tail_radius_check(c.d, c.nu, r);
    expect_rel(t.integral, c.integral, 1e-11);
    EXPECT_TRUE(t.bound_satisfied);
  }
}

TEST(TailRadius, BoundHoldsOverAGrid) {
  for (int d : {1, 2, 3, 5, 8, 10}) {
    for (double nu : {0.5, 1e-2, 1e-4, 1e-8}) {
      const double r = lemma37_radius(d, nu);
      EXPECT_TRUE(tail_radius_check(d, nu, r).bound_satisfied) << d << " " << nu;
      EXPECT_FALSE(tail_radius_check(d, nu, 0.0).bound_satisfied);
    }
  }
}

TEST(RateRhs, ConvexMatchesMpmath) {
  RateInputs in;
  in.gamma = 1.0;
  in.horizon = 1000;
  in.sigma = 0.01;
  in.x0 = v2(5, 0);
  in.xstar = v2(0, 0);
  expect_rel(convex_rate_rhs(SpbCertificate(1.0, 0.1, 1), in, 2), oracle::kConvexRhsQuad, 1e-12);
}

TEST(RateRhs, ExplicitConstantScheduleAgreesWithDefault) {
  RateInputs in;
  in.gamma = 0.5;
  in.horizon = 50;
  in.sigma = 0.2;
  in.x0 = v2(1, 2);
  in.xstar = v2(0, 0);
  in.inf_value = 0.0;
  in.f_x0 = 2.5;
  const SpbCertificate c(1.0, 0.1, 1);
  RateInputs ex = in;
  ex.taus.assign(51, 0.5 / std::sqrt(51.0));
  expect_rel(convex_rate_rhs(c, ex, 2), convex_rate_rhs(c, in, 2), 1e-12);
  expect_rel(unconstrained_rate_rhs(c, ex, 2), unconstrained_rate_rhs(c, in, 2), 1e-12);
}

TEST(RateRhs, UnconstrainedMatchesMpmath) {
  RateInputs a;
  a.gamma = 0.5;
  a.horizon = 1000;
  a.sigma = 0.5;
  a.x0 = v1(5);
  a.inf_value = 0.0;
  a.f_x0 = 5.0;
  expect_rel(unconstrained_rate_rhs(SpbCertificate(0.0, 1.0, 0), a, 1), oracle::kUnconstrainedRhsAbs, 1e-12);
  RateInputs q = a;
  q.x0 = v2(2, 1);
  q.f_x0 = 2.5;
  expect_rel(unconstrained_rate_rhs(SpbCertificate(1.0, 0.1, 1), q, 2), oracle::kUnconstrainedRhsQuad, 1e-12);
}

TEST(RateRhs, ValidatesInputs) {
  const SpbCertificate c(1.0, 0.1, 1);
  RateInputs in;
  in.sigma = 0.1;
  in.x0 = v2(1, 1);
  in.xstar = v2(0, 0);
  in.gamma = 1.5;
  EXPECT_THROW(convex_rate_rhs(c, in, 2), InputError);
  in.gamma = 1.0;
  in.horizon = -1;
  EXPECT_THROW(convex_rate_rhs(c, in, 2), InputError);
  in.horizon = 3;
  in.taus = {0.1, 0.1};
  EXPECT_THROW(convex_rate_rhs(c, in, 2), InputError);
  in.taus.clear();
  in.xstar.reset();
  EXPECT_THROW(convex_rate_rhs(c, in, 2), InputError);
  EXPECT_THROW(unconstrained_rate_rhs(c, in, 2), InputError);
  in.horizon = 0;
  in.xstar = v2(0, 0);
  EXPECT_NO_THROW(convex_rate_rhs(c, in, 2));
}

TEST(Corollary410, LipschitzCase) {
  RateInputs in;
  in.gamma = 0.5;
  in.horizon = 10;
  in.sigma = 0.5;
  in.x0 = v1(2);
  in.inf_value = 0.0;
  in.f_x0 = 2.0;
  in.mu = 1.0;
  in.sup_s_norm = 0.0;
  // bracket = 2 + sqrt(1) * 0.5 + 0.5 * 75 * (2) * 0.25, C~ = bracket / gamma
  const double bracket = 2.0 + 0.5 + 0.5 * 75.0 * 2.0 * 0.25;
  const auto c = corollary410_constants(SpbCertificate(0.0, 1.0, 0), in, 1);
  expect_rel(c.c_tilde_omega, bracket / 0.5);
  expect_rel(c.m_tilde_omega, 8.0 * (bracket + 0.5 * 0.25));
}

TEST(Corollary47, QuadValues) {
  const auto fn = make_function("QUAD");
  RateInputs in;
  in.gamma = 1.0;
  in.horizon = 100;
  in.sigma = 0.1;
  in.x0 = v2(3, 4);
  const auto c = corollary47_constants(*fn, in);
  const double m_xs = approx_error_coeff(fn->certificate, 0.1, 2, v2(0, 0));
  expect_rel(c.c_lev, std::sqrt(2.0 * m_xs * 0.1));
  const double h2 = moment_coeff(fn->certificate, 0.1, 2, 2);
  expect_rel(c.m_bd, 100.0 + 6.0 * c.c_lev * c.c_lev + 2.0 * h2);
  expect_rel(c.c_bd, (25.0 + h2) / 2.0);
  ASSERT_TRUE(c.final_bound);
  EXPECT_GT(*c.final_bound, 0.0);
}

TEST(Lemma44, Examples) {
  EXPECT_DOUBLE_EQ(lemma44_rhs(0.5, 0.0, 1), 1.0);
  EXPECT_DOUBLE_EQ(lemma44_rhs(0.5, 0.0, 2), 1.0);
  EXPECT_DOUBLE_EQ(lemma44_rhs(2.0, 1.0, 2), 4.0);
  EXPECT_DOUBLE_EQ(lemma44_rhs(8.0, 4.0, 3), 3.0 * std::pow(16.0, 0.25));
  EXPECT_THROW(lemma44_rhs(0.0, 1.0, 1), InputError);
  EXPECT_THROW(lemma44_rhs(1.0, -1.0, 1), InputError);
}

TEST(Schedule52, LipschitzMatchesMpmath) {
  Theorem52Inputs in{v1(5.0), 5.0, 0.0, std::nullopt, std::nullopt};
  const auto s = theorem52_schedule(SpbCertificate(0.0, 1.0, 0), 1, 0.5, 10000, in);
  expect_rel(s.kappa2, oracle::kSchedAbs_Kappa2);
  EXPECT_FALSE(s.kappa1);
  expect_rel(s.sigma_breve, oracle::kSchedAbs_SigmaBreve, 1e-12);
  expect_rel(s.n_breve, oracle::kSchedAbs_NBreve);
  expect_rel(s.k_const, oracle::kSchedAbs_K);
  EXPECT_TRUE(s.horizon_ok);
  ASSERT_TRUE(s.rhs);
  expect_rel(*s.rhs, oracle::kSchedAbs_Rhs, 1e-12);
}

TEST(Schedule52, QuadMatchesMpmath) {
  const int t = static_cast<int>(oracle::kSchedQuad_T);
  Theorem52Inputs in{v2(2, 1), 2.5, 0.0, 1.0, 0.0};
  const auto s = theorem52_schedule(SpbCertificate(1.0, 0.1, 1), 2, 0.5, t, in);
  ASSERT_TRUE(s.kappa1);
  expect_rel(*s.kappa1, oracle::kSchedQuad_Kappa1);
  expect_rel(s.n_breve, oracle::kSchedQuad_NBreve, 1e-12);
  expect_rel(s.sigma_breve, oracle::kSchedQuad_SigmaBreve, 1e-12);
  expect_rel(s.k_const, oracle::kSchedQuad_K, 1e-12);
  ASSERT_TRUE(s.k_tilde_omega);
  expect_rel(*s.k_tilde_omega, oracle::kSchedQuad_KTilde, 1e-12);
  ASSERT_TRUE(s.rhs);
  expect_rel(*s.rhs, oracle::kSchedQuad_Rhs, 1e-12);
  EXPECT_TRUE(s.horizon_ok);
}

TEST(Schedule52, HorizonCheck) {
  Theorem52Inputs in{v2(2, 1), 2.5, 0.0, 1.0, 0.0};
  const SpbCertificate c(1.0, 0.1, 1);
  EXPECT_FALSE(theorem52_schedule(c, 2, 0.5, 10, in).horizon_ok);
  EXPECT_FALSE(theorem52_schedule(c, 2, 0.5, 64, in).horizon_ok);
  EXPECT_TRUE(theorem52_schedule(c, 2, 0.5, 65, in).horizon_ok);
}

TEST(Schedule52, SigmaBreveAtMostOneOnceTheHorizonIsLongEnough) {
  for (const auto& c : {SpbCertificate(0.0, 1.0, 0), SpbCertificate(0.0, 0.05, 0), SpbCertificate(1.0, 0.1, 1),
                        SpbCertificate(2.0, 1.0, 1), SpbCertificate(4.0, 0.1, 3)}) {
    for (int d : {1, 2, 3}) {
      for (double delta : {0.1, 0.5, 0.99}) {
        Theorem52Inputs in{Vec::Ones(d), 1.0, 0.0, std::nullopt, std::nullopt};
        const auto probe = theorem52_schedule(c, d, delta, 1, in);
        if (probe.n_breve > 1e9) continue;
        const int t = static_cast<int>(std::ceil(probe.n_breve));
        const auto s = theorem52_schedule(c, d, delta, t, in);
        EXPECT_TRUE(s.horizon_ok);
        EXPECT_LE(s.sigma_breve, 1.0);
        EXPECT_LE(s.eps_breve, 1.0);
      }
    }
  }
}

TEST(Schedule52, RejectsBadArguments) {
  Theorem52Inputs in{v1(1.0), 1.0, 0.0, std::nullopt, std::nullopt};
  const SpbCertificate c(0.0, 1.0, 0);
  EXPECT_THROW(theorem52_schedule(c, 1, 0.0, 10, in), InputError);
  EXPECT_THROW(theorem52_schedule(c, 1, 1.0, 10, in), InputError);
  EXPECT_THROW(theorem52_schedule(c, 1, 0.5, 0, in), InputError);
}

TEST(Schedule52, RateNeedsGrowthDataWhenMIsPositive) {
  Theorem52Inputs in{v2(2, 1), 2.5, 0.0, std::nullopt, std::nullopt};
  const auto s = theorem52_schedule(SpbCertificate(1.0, 0.1, 1), 2, 0.5, 200, in);
  EXPECT_FALSE(s.k_tilde_omega);
  EXPECT_FALSE(s.rhs);
}
