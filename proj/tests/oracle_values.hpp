#pragma once

// Generated by tests/oracles/generate.py (mpmath, 50 digits). Do not edit.

namespace oracle {

inline constexpr double kWm1_m0p1 = -3.5771520639572972184;
inline constexpr double kWm1_m0p2 = -2.5426413577735264243;
inline constexpr double kWm1_m0p36 = -1.2227701339785059531;
inline constexpr double kWm1_m1em5 = -14.163600815810183009;
inline constexpr double kWm1_m1em12 = -31.067172842017230842;
inline constexpr double kTailRadius_d1_nu1 = 3.1171967347939355938;
inline constexpr double kTailIntegral_d1_nu1 = 0.0045765940425813568481;
inline constexpr double kTailRadius_d2_nu2 = 4.40838189893071166;
inline constexpr double kTailIntegral_d2_nu2 = 0.00037859693418095035767;
inline constexpr double kTailRadius_d5_nu3 = 6.1779970451558295677;
inline constexpr double kTailIntegral_d5_nu3 = 0.000034552629867277526128;
inline constexpr double kTailRadius_d10_nu6 = 8.7370072095602806871;
inline constexpr double kTailIntegral_d10_nu6 = 2.5594924369565766505e-8;
inline constexpr double kGammaP_2p5_1p7 = 0.36143007689620490988;
inline constexpr double kGammaQ_7_12 = 0.045822306888651122738;
inline constexpr double kGammaQ_0p5_30 = 9.4857375710738483885e-15;
inline constexpr double kChiSqCdf_9p2_d5 = 0.89865214366989335889;
inline constexpr double kRuleAbs_P = 4.0;
inline constexpr double kRuleAbs_Eta1 = 0.025;
inline constexpr double kRuleAbs_H = 3.5724105531778166233;
inline constexpr double kRuleAbs_SigmaBar = 0.139961516896547057;
inline constexpr double kRuleAbs_Simplified = 0.0042774785039027066647;
inline constexpr double kRuleAbs_M1 = 8.0265130985240020097;
inline constexpr double kRuleAbs_M2 = 5.227537614647589947;
inline constexpr double kRulePw_P = 15.31370849898476039;
inline constexpr double kRulePw_Eta1 = 0.0065300968740935360629;
inline constexpr double kRulePw_H = 3.956145126785319746;
inline constexpr double kRulePw_SigmaBar = 0.008838834764831844055;
inline constexpr double kRulePw_Simplified = 0.0011172939602934944036;
inline constexpr double kRulePw_M1 = 30.728920463519878251;
inline constexpr double kRulePw_M2 = 20.013246799547829857;
inline constexpr double kRuleQuad_P = 7.3282032302755091741;
inline constexpr double kRuleQuad_Eta1 = 0.040937729286844748165;
inline constexpr double kRuleQuad_H = 4.0321261615264641038;
inline constexpr double kRuleQuad_SigmaBar = 0.024800811282686266898;
inline constexpr double kRuleQuad_Simplified = 0.0026815464676560872839;
inline constexpr double kRuleQuad_M1 = 42.380357249355308418;
inline constexpr double kRuleQuad_M2 = 12.516181583258149706;
inline constexpr double kConstQuad_FrakA = 0.61961524227066318806;
inline constexpr double kConstQuad_FrakB = 1.0;
inline constexpr double kConstQuad_FrakC = 1.0;
inline constexpr double kConstQuad_CalA = 4.4714045207910316829;
inline constexpr double kConstQuad_CalB = 4.7140452079103168293;
inline constexpr double kConstQuad_CalC = 4.7140452079103168293;
inline constexpr double kConstQuad_M = 3.4627416997969520781;
inline constexpr double kConstQuad_MBreve = 6.2627416997969520781;
inline constexpr double kConstQuad_H1 = 4.0;
inline constexpr double kConstQuad_HBreve1 = 11.580339887498948482;
inline constexpr double kConstQuad_H2 = 139.32;
inline constexpr double kConstQuad_HBreve2 = 1537.08;
inline constexpr double kConstQuad_H4 = 1646736.5232;
inline constexpr double kConstQuad_HBreve4 = 203297499.0;
inline constexpr double kConstQuart_FrakA = 89.542719099991587856;
inline constexpr double kConstQuart_FrakB = 64.0;
inline constexpr double kConstQuart_FrakC = 16.0;
inline constexpr double kConstQuart_CalA = 576.28284271247461901;
inline constexpr double kConstQuart_CalB = 181.01933598375616625;
inline constexpr double kConstQuart_CalC = 45.254833995939041562;
inline constexpr double kConstQuart_M = 148.50895372438444214;
inline constexpr double kConstQuart_MBreve = 652.50895372438444214;
inline constexpr double kConstQuart_H1 = 259.68362848432987787;
inline constexpr double kConstQuart_HBreve1 = 2074.669027874639023;
inline constexpr double kConstQuart_H2 = 2985985.08;
inline constexpr double kConstQuart_HBreve2 = 191102977.08;
inline constexpr double kConstQuart_H4 = 11473886645895195.0;
inline constexpr double kConstQuart_HBreve4 = 46997039701586608155.0;
inline constexpr double kConvexRhsQuad = 2.1036781881887445416;
inline constexpr double kUnconstrainedRhsAbs = 1.5329383875094588746;
inline constexpr double kUnconstrainedRhsQuad = 34.828159358324905365;
inline constexpr double kSchedAbs_Kappa2 = 0.042774785039027066647;
inline constexpr double kSchedAbs_SigmaBreve = 0.0092155480746736735579;
inline constexpr double kSchedAbs_NBreve = 2.0;
inline constexpr double kSchedAbs_K = 43.5;
inline constexpr double kSchedAbs_Rhs = 14.171750887626301088;
inline constexpr double kSchedQuad_T = 165.0;
inline constexpr double kSchedQuad_Kappa1 = 0.044692441127601454731;
inline constexpr double kSchedQuad_NBreve = 65.0;
inline constexpr double kSchedQuad_SigmaBreve = 0.019083297436592715957;
inline constexpr double kSchedQuad_K = 210298.8350101215474;
inline constexpr double kSchedQuad_KTilde = 1682398.6800809723792;
inline constexpr double kSchedQuad_Rhs = 55882.342780536545416;
inline constexpr double kSmoothAbs_Value = 0.71293903545186528496;
inline constexpr double kSmoothAbs_Grad = 0.91988168627236581916;
inline constexpr double kSmoothPwA_Value = 1.0021227640732470977;
inline constexpr double kSmoothPwA_Grad = 1.5192832125671283691;
inline constexpr double kSmoothPwB_Value = 2.1459976321613270573;
inline constexpr double kSmoothPwB_Grad = -2.3188249352995756216;
inline constexpr double kSmoothPwC_Value = 0.41031734637552228154;
inline constexpr double kSmoothPwC_Grad = 6.3723676445298091081e-58;
inline constexpr double kSmoothQuart_Value = 1.9753;

}  // namespace oracle
