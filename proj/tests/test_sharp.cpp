#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mathieu/sharp.hpp"

using namespace mathieu;

namespace {

const double inv_two_zeta3 = 0.415953686290353734341563139411;  // mpmath

}  // namespace

TEST(Profile, ClassicalEndpoints) {
  auto fw = s_mu_framework(1, 0);
  EXPECT_NEAR(f_profile(fw, 0), inv_two_zeta3, 1e-13);
  EXPECT_DOUBLE_EQ(fw.f_inf(), 1.0 / 6);
  // f(t) -> 1/6 along the asymptotic path, from above
  for (double t : {100.0, 1e3, 1e4}) {
    double f = f_profile(fw, t);
    EXPECT_GT(f, 1.0 / 6);
    EXPECT_LT(f - 1.0 / 6, 0.1 / (t * t));
  }
  EXPECT_NO_THROW(fw.check({0.0, 0.1, 1.0, 10.0, 200.0}));
}

TEST(Profile, DefectAndSeriesPathsAgree) {
  // the cancellation-free path against the plain ratio of the rigorous evaluator
  for (double mu : {0.5, 1.0, 3.0})
    for (double u : {0.0, 0.7})
      for (double t : {0.3, 2.0, 12.0}) {
        auto fw = s_mu_framework(mu, u);
        auto plain = fw;
        plain.defect = nullptr;
        plain.estimate = nullptr;
        EXPECT_NEAR(f_profile(fw, t), f_profile(plain, t), 1e-9 * (1 + t * t)) << mu << " " << u << " " << t;
      }
}

TEST(Profile, FrameworkInvariantViolationRejected) {
  auto fw = s_mu_framework(1, 0);
  fw.C = 0.5;  // S(t) < C t^-2 fails near the limit
  EXPECT_THROW(fw.check({100.0}), precondition_error);
}

TEST(SharpConstants, ClassicalPair) {
  auto c = compute_mM(s_mu_framework(1, 0));
  EXPECT_NEAR(c.m, 1.0 / 6, 1e-9);
  EXPECT_TRUE(std::isinf(c.t_at_m));
  EXPECT_NEAR(c.M, inv_two_zeta3, 1e-9);
  EXPECT_LT(c.t_at_M, 1e-6);
  EXPECT_FALSE(c.certified);
  EXPECT_DOUBLE_EQ(c.f_inf, 1.0 / 6);
}

TEST(SharpConstants, ChainAcrossParameters) {
  for (double mu : {0.5, 2.0, 4.0})
    for (double u : {0.0, 0.5, 1.0}) {
      auto c = compute_mM(s_mu_framework(mu, u));
      const double a = u * u + u;
      EXPECT_GT(c.m, a) << mu << " " << u;
      EXPECT_LE(c.m, a + 1.0 / 6 + 2 * c.tolerance());
      EXPECT_GT(c.M, a + 0.25);
      EXPECT_LT(c.M, (1 + u) * (1 + u));
      EXPECT_LE(c.m, c.M);
    }
  // mu = 2, u = 0: m = 1/6 in the limit and 1/4 < M < 1
  auto c = compute_mM(s_mu_framework(2, 0));
  EXPECT_NEAR(c.m, 1.0 / 6, 1e-9);
  EXPECT_GT(c.M, 0.25);
  EXPECT_LT(c.M, 1.0);
}

TEST(SharpConstants, MonotoneInMuAndLimits) {
  for (double u : {0.0, 1.0}) {
    double pm = INFINITY, pM = -INFINITY, gap = INFINITY;
    for (double mu : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 64.0}) {
      auto c = compute_mM(s_mu_framework(mu, u));
      EXPECT_LE(c.m, pm + 2 * c.tolerance()) << mu;
      EXPECT_GE(c.M, pM - 2 * c.tolerance()) << mu;
      const double g = M_infinity(u) - c.M;
      EXPECT_GT(g, 0);
      EXPECT_LT(g, gap);
      EXPECT_GE(c.m, m_infinity(u) - 2 * c.tolerance());
      pm = c.m;
      pM = c.M;
      gap = g;
    }
  }
}

TEST(SharpConstants, SearchBudget) {
  search_config cfg;
  cfg.max_evals = 100;
  EXPECT_THROW(compute_mM(s_mu_framework(1, 0), cfg), search_error);
}

TEST(SharpConstants, EventualDecrease) {
  for (double nu : {0.5, 1.0, 3.0})
    for (double u : {0.0, 0.5}) {
      auto fw = s_mu_framework(nu, u);
      double prev = f_profile(fw, 20);
      for (double t = 25; t <= 1000; t *= 1.25) {
        double f = f_profile(fw, t);
        EXPECT_LT(f, prev) << nu << " " << u << " " << t;
        prev = f;
      }
    }
}

TEST(SharpConstants, RootDifferenceAsymptotic) {
  // t^6 [((nu+1) S_{nu+1})^{1/(nu+1)} - (nu S_nu)^{1/nu}] -> -(60u^2+60u+11)/360
  const double t = 100;
  for (double nu : {0.5, 1.0, 2.0})
    for (double u : {0.0, 0.5, 1.0}) {
      auto root = [&](double mu) { return std::expm1(std::log1p(s_mu_defect(mu, u, t).value) / mu); };
      double v = std::pow(t, 4) * (root(nu + 1) - root(nu));
      double lim = -(60 * u * u + 60 * u + 11) / 360;
      EXPECT_NEAR(v, lim, 0.05 * std::abs(lim)) << nu << " " << u;
    }
}

TEST(Psi, PowerKernelMatchesProfile) {
  for (double mu : {0.5, 1.0, 2.0})
    for (double u : {0.0, 0.5})
      for (double y : {0.0, 1.0, 9.0}) {
        auto k = convex_kernel::power(mu);
        auto s = kernel_series(k, u, y, 1e-15);
        auto ref = eval_S<long double>(mathieu_params::make(1, 2, mu, u), std::sqrt((long double)y), 1e-20L,
                                       tail_rule::euler_maclaurin);
        EXPECT_NEAR(s.value, double(ref.value), s.err_hi + 1e-15) << mu << " " << u << " " << y;
        EXPECT_LE(std::abs(s.value - double(ref.value)), s.err_hi + 4e-16 * s.value);
        double psi = psi_uy(k, u, y);
        EXPECT_NEAR(psi, std::pow(1 / (mu * s.value), 1 / mu) - y, 1e-9);
        // psi at y = t^2 is the profile f(t)
        if (u == 0.0) {
          EXPECT_NEAR(psi, f_profile(s_mu_framework(mu, u), std::sqrt(y)), 1e-8 * (1 + y));
        }
      }
}

TEST(Psi, ExponentialKernelIsConstant) {
  const double oracle[3][2] = {{0.211013917236347500491547306959, 0.176667588069218189570761740818},
                               {1.12121546264973796126589790808, 0.967367487357798768697010636025},
                               {2.60363728447812013272517131775, 2.28466544869579522012408737793}};
  const double us[] = {0.0, 0.5, 1.0}, lams[] = {1.0, 0.3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) {
      auto k = convex_kernel::exponential(lams[j]);
      for (double y : {0.0, 0.5, 2.0, 7.0}) EXPECT_NEAR(psi_uy(k, us[i], y), oracle[i][j], 1e-10) << i << " " << j << " " << y;
    }
}

TEST(Psi, BoundsAndGenericInverse) {
  auto k = convex_kernel::power(1.5);
  double psi = psi_uy(k, 0.5, 3);
  EXPECT_GE(psi, 0.75);
  EXPECT_LT(psi, 2.25);
  // the bisection + Newton inverse reproduces the closed form
  auto generic = k;
  generic.F_inv = nullptr;
  for (double s : {1e-6, 0.01, 0.7, 5.0, 300.0}) EXPECT_NEAR(kernel_F_inverse(generic, s), k.F_inv(s), 1e-12 * k.F_inv(s));
  auto e = convex_kernel::exponential(0.3);
  auto ge = e;
  ge.F_inv = nullptr;
  for (double s : {1e-9, 0.2, 3.0, 40.0}) EXPECT_NEAR(kernel_F_inverse(ge, s), e.F_inv(s), 1e-11 * (1 + std::abs(e.F_inv(s))));
  for (double u : {0.0, 0.3, 1.0, 2.5})
    for (double y : {0.0, 0.5, 4.0, 30.0}) {
      double p = psi_uy(generic, u, y);
      EXPECT_GE(p, u * u + u);
      EXPECT_LT(p, (1 + u) * (1 + u));
    }
  EXPECT_THROW(psi_uy(k, -0.5, 1), domain_error);
}

TEST(ThetaLimits, ConstantsAndEndpoints) {
  EXPECT_DOUBLE_EQ(M_infinity(0.3), 1.69);
  for (double u : {0.0, 0.5, 1.0, 2.0}) {
    double m = m_infinity(u);
    EXPECT_GT(m, u * u + u);
    EXPECT_LE(m, u * u + u + 1.0 / 6 + 1e-12);
    EXPECT_NEAR(-log_phi_u<double>(u, 1e-4) / 1e-4, u * u + u + 1.0 / 6, 1e-3);
  }
  EXPECT_THROW(m_infinity(-1), domain_error);
}

TEST(Impossibility, WrongExponentsFail) {
  auto fw = s_mu_framework(1, 0);
  auto up = impossibility_demo(fw, 1.0, bound_side::upper, 0.1);
  ASSERT_TRUE(up.found);
  // the witness really violates S(t) <= (t + 0.1)^-2
  auto s = eval_S<double>(mathieu_params::make(1, 2, 1, 0), up.t, 1e-16 / (up.t * up.t));
  EXPECT_GT(s.lower(), std::pow(up.t + 0.1, -2.0));
  auto lo = impossibility_demo(fw, 3.0, bound_side::lower, 1.0);
  ASSERT_TRUE(lo.found);
  EXPECT_LT(lo.defect, lo.candidate);
  EXPECT_THROW(impossibility_demo(fw, 2.0, bound_side::upper, 0.1), precondition_error);
  // a tiny scan budget reports not-found instead of failing
  auto none = impossibility_demo(fw, 1.0, bound_side::upper, 1e-9, 3);
  EXPECT_FALSE(none.found);
  EXPECT_EQ(none.scanned, 4);
}
