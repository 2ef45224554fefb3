#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "mathieu/checks.hpp"

using namespace mathieu;

namespace {

// mpmath oracles
const double zeta3 = 1.20205690315959428539973816151;
const double s_pow2_u0_y1 = 0.794233542759318865583013617157;     // sum 2k/(k^2+1)^2
const double s_pow2_um125_y1 = 0.543474285621788005021899034723;  // sum 2(k-5/4)/((k-5/4)^2+1)^2
const double s_exp_u0_y1 = 0.297895085294251578346138092031;      // sum 2k e^{-(k^2+1)}
const double diff_p04_t1 = 0.0678354227579224601303576078355;     // 1/(0.16+1) - S_1(1,0)
const double s1_t2 = 0.238912775073614874049362769628;            // S_1(2,0)
const double d_t2S_t1 = 0.425680611171383693846379074176;         // d/dt t^2 S_1(t,0) at t=1

}  // namespace

TEST(HermiteHadamard, ConvexExamples) {
  EXPECT_TRUE(hermite_hadamard_check([](double x) { return x * x; }, 0, 1).passed());
  auto r = hermite_hadamard_check([](double x) { return 1 / (x * x); }, 1, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.total, 2);
  // a linear g is the equality case: the strict check cannot confirm it and says so
  auto lin = hermite_hadamard_check([](double x) { return 3 * x + 1; }, 0, 2);
  EXPECT_FALSE(lin.passed());
  EXPECT_EQ(lin.inconclusive_count(), 2);
  EXPECT_THROW(hermite_hadamard_check([](double x) { return x; }, 1, 1), domain_error);
}

TEST(ConvexSeriesBounds, PowerKernel) {
  auto k = convex_kernel::power(1);
  auto s = kernel_series(k, 0, 1);
  EXPECT_NEAR(s.value, s_pow2_u0_y1, 1e-13);
  // 1/(2) + (1/2)/4 = 0.625 < S < 1
  auto r = fsf_bounds_check(k, 0, 1);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.total, 2);
  EXPECT_GT(s.value, 0.625);
  // u = -5/4: only the left side applies
  EXPECT_NEAR(kernel_series(k, -1.25, 1).value, s_pow2_um125_y1, 1e-13);
  auto l = fsf_bounds_check(k, -1.25, 1);
  EXPECT_TRUE(l.passed());
  EXPECT_EQ(l.total, 1);
  EXPECT_THROW(fsf_bounds_check(k, -2, 1), precondition_error);
  // general mu and negative y inside the admissible range
  for (double mu : {0.5, 2.0, 5.0})
    for (double u : {-1.0, -0.5, 0.0, 0.7, 3.0})
      for (double y : {-0.1, 0.5, 10.0}) {
        if (u * u + u + y <= 0 && (1 + u) * (1 + u) + y <= 0) continue;
        EXPECT_TRUE(fsf_bounds_check(convex_kernel::power(mu), u, y).passed()) << mu << " " << u << " " << y;
      }
}

TEST(ConvexSeriesBounds, ExponentialKernelStrict) {
  auto k = convex_kernel::exponential(1);
  EXPECT_NEAR(kernel_series(k, 0, 1).value, s_exp_u0_y1, 1e-14);
  for (double u : {0.0, 0.5, 2.0})
    for (double y : {-3.0, 0.0, 1.0, 4.0}) EXPECT_TRUE(fsf_bounds_check(k, u, y).passed()) << u << " " << y;
}

TEST(ThetaBounds, StrictOnGrid) {
  for (double u : {0.0, 0.5, 1.0, 3.0}) EXPECT_TRUE(theta_bounds_check(u, grid_spec::log_spaced(1e-3, 30, 60)).passed()) << u;
  EXPECT_THROW(theta_bounds_check(-0.5, grid_spec::linear(1, 2, 3)), domain_error);
}

TEST(Classical, AllFourOnGrid) {
  auto g = grid_spec::log_spaced(1e-3, 1e3, 40);
  g.points.insert(g.points.begin(), 0.0);
  auto r = classical_inequalities_check(g);
  EXPECT_TRUE(r.passed()) << to_json(r).dump();
  // Mathieu at t = 1 and the t -> 0 side of the double inequality
  EXPECT_NEAR(detail::s_mu_d(1, 0, 1).value, s_pow2_u0_y1, 1e-13);
  EXPECT_LT(detail::s_mu_d(1, 0, 0).value, 6.0);
  EXPECT_NEAR(detail::s_mu_d(1, 0, 0).value, 2 * zeta3, 1e-13);
}

TEST(Classical, WilkinsAtZero) {
  // sum k/k^6 = zeta(5) < zeta(3)^2
  auto s2 = detail::s_mu_d(2, 0, 0), s1 = detail::s_mu_d(1, 0, 0);
  EXPECT_NEAR(s2.value / 2, 1.03692775514336992633136548646, 1e-13);
  EXPECT_NEAR(s1.value * s1.value / 4, 1.44494079843363423391368507881, 1e-12);
  auto r = wilkins_style_check(1, 0, grid_spec{{0.0}, 0});
  EXPECT_TRUE(r.passed());
}

TEST(Classical, GridValidation) {
  EXPECT_THROW(classical_inequalities_check(grid_spec{{}, 0}), domain_error);
  EXPECT_THROW(classical_inequalities_check(grid_spec{{1, 1}, 0}), domain_error);
}

TEST(DifferenceBound, Branches) {
  auto g = grid_spec::log_spaced(1e-2, 1e2, 30);
  auto r1 = ner_check(0.5, 0, 1, g);
  EXPECT_TRUE(r1.passed());
  auto r2 = ner_check(1.5, 0, 1, g);
  EXPECT_TRUE(r2.passed());
  // the bound values of both branches
  const double s0 = detail::s_mu_d(1, 0, 0).value;
  EXPECT_NEAR(4 - s0, 1.595886, 1e-6);
  EXPECT_NEAR(s0 - 1 / 2.25, 1.959669, 1e-6);
  EXPECT_THROW(ner_check(0.75, 0, 1, g), regime_error);
  for (double mu : {0.5, 2.0})
    for (double u : {0.0, 0.8}) {
      EXPECT_TRUE(ner_check(u + 0.3, u, mu, g).passed());
      EXPECT_TRUE(ner_check(u + 1.2, u, mu, g).passed());
    }
}

TEST(SignOfKernel, ThreeClasses) {
  auto a = sign_g_pu(0.4, 0);
  EXPECT_EQ(a.classification, sign_class::positive);
  EXPECT_TRUE(a.sampling_agrees);
  auto b = sign_g_pu(1.2, 0);
  EXPECT_EQ(b.classification, sign_class::negative);
  EXPECT_TRUE(b.sampling_agrees);
  auto c = sign_g_pu(0.75, 0);
  EXPECT_EQ(c.classification, sign_class::sign_changing);
  EXPECT_TRUE(c.sampling_agrees);
  // negative near 0, positive far out
  EXPECT_LT(c.x_negative, c.x_positive);
  EXPECT_LT(g_pu(0.75, 0, c.x_negative), 0);
  EXPECT_GT(g_pu(0.75, 0, c.x_positive), 0);
  // the sign function agrees with the kernel itself where the latter is well conditioned
  for (double p : {0.2, 0.9, 1.7})
    for (double x : {0.7, 3.0, 20.0}) EXPECT_EQ(std::signbit(g_pu_sign_function(p, 0.3, x)), std::signbit(g_pu(p, 0.3, x)));
  // boundary cases belong to the certified branches
  EXPECT_EQ(sign_g_pu(1.5, 1).classification, sign_class::positive);
  EXPECT_EQ(sign_g_pu(2, 1).classification, sign_class::negative);
  EXPECT_STREQ(to_string(sign_class::sign_changing), "sign_changing");
}

TEST(Monotonicity, HSign) {
  EXPECT_TRUE(monotonicity_check(1, 0, 0, grid_spec{{1.0}, 0}).passed());
  EXPECT_TRUE(monotonicity_check(1, 1.0 / 6, 0, grid_spec::linear(0.05, 10, 40)).passed());
  auto bad = monotonicity_check(1, 10, 0, grid_spec::linear(0.05, 10, 40));
  EXPECT_FALSE(bad.passed());
  EXPECT_LT(bad.violations.front().point, 1.0);
  EXPECT_FALSE(bad.violations.front().inconclusive);
}

TEST(Monotonicity, WilkinsStyle) {
  EXPECT_TRUE(wilkins_style_check(1, 0, grid_spec::linear(0, 20, 41)).passed());
  // exploratory parameters only produce a report
  auto r = wilkins_style_check(0.5, 1, grid_spec::linear(0, 20, 11));
  EXPECT_EQ(r.total, 11);
}

TEST(Bessel, ValuesAndOverlap) {
  for (double lam : {-0.5, 0.0, 0.5, 1.5, 4.0}) EXPECT_NEAR(bessel_j(lam, 0), bessel_j0_value(lam), 1e-15);
  for (double x : {0.1, 1.0, 7.0, 11.9, 12.5, 30.0, 80.0})
    EXPECT_NEAR(bessel_j(0.5, x), std::sqrt(2 / std::numbers::pi) * std::sin(x) / x, 1e-14);
  // around the switch point both branches agree with an independent evaluation
  for (double lam : {0.0, 0.5, 1.3, 3.0})
    for (double x = 8; x <= 20; x += 0.37) {
      const double ref = boost::math::cyl_bessel_j(lam, x) / std::pow(x, lam);
      const double env = std::sqrt(2 / (std::numbers::pi * x)) / std::pow(x, lam);
      EXPECT_NEAR(bessel_j(lam, x), ref, 1e-10 * env) << lam << " " << x;
      EXPECT_NEAR(bessel_j(lam, x, 1e9), bessel_j(lam, x, 0), 1e-10 * env) << lam << " " << x;
    }
  for (double lam : {-0.25, 0.5, 2.0})
    for (double t = 0.05; t < 50; t *= 1.3) EXPECT_LT(std::abs(bessel_j(lam, t)), bessel_j0_value(lam));
  EXPECT_THROW(bessel_j(-1, 1), domain_error);
}

TEST(Hankel, AuxKernelsContinuous) {
  for (double u : {0.0, 0.4, 2.0}) {
    EXPECT_NEAR(h_u(u, 0), 1, 1e-15);
    for (double p : {0.3, 1.0}) EXPECT_NEAR(g_pu(p, u, 0), u + 0.5 - p, 1e-15);
    // the series and closed forms meet at the cut
    for (double x : {0.4999999, 0.5000001}) {
      EXPECT_NEAR(h_u(u, x), x * std::exp(-u * x) / std::expm1(x), 1e-8);
      EXPECT_NEAR(g_pu(0.7, u, x), std::exp(-0.7 * x) / x - std::exp(-u * x) / std::expm1(x), 1e-8);
    }
    const double e = 1e-6;
    for (double x : {0.2, 0.5, 1.5}) {
      EXPECT_NEAR(h_u_prime(u, x), (h_u(u, x + e) - h_u(u, x - e)) / (2 * e), 1e-8);
      EXPECT_NEAR(g_pu_prime(0.7, u, x), (g_pu(0.7, u, x + e) - g_pu(0.7, u, x - e)) / (2 * e), 1e-7);
    }
  }
  EXPECT_NEAR(G_pum(0.7, 0.2, 1.5, 0), 2 * (0.2 + 0.5 - 0.7), 1e-15);
}

TEST(Hankel, Identities) {
  auto a = identity_laplace_bessel(1, 1, 1);
  EXPECT_NEAR(a.lhs, 0.5, 1e-15);
  EXPECT_LT(a.difference(), 1e-10);
  auto b = identity_series_transform(1, 0, 2);
  EXPECT_NEAR(b.lhs, s1_t2, 1e-13);
  EXPECT_LT(b.difference(), 1e-8);
  auto c = identity_difference_transform(0.4, 0, 1, 1);
  EXPECT_NEAR(c.lhs, diff_p04_t1, 1e-13);
  EXPECT_LT(c.difference(), 1e-8);
  for (double mu : {0.75, 1.0, 2.5}) {
    auto d = identity_parts_transform(0.4, 0.3, mu, 1.5);
    EXPECT_LT(d.difference(), 1e-8) << mu;
  }
  EXPECT_THROW(identity_parts_transform(0.4, 0.3, 0.5, 1), domain_error);
  hankel_options none;
  EXPECT_THROW(hankel_transform([](double) { return 1.0; }, 3, 1, none), precondition_error);
}

TEST(Hankel, DerivativeIdentity) {
  auto v = identity_derivative(1, 0, 1);
  EXPECT_GT(v.lhs, 0);
  EXPECT_GT(v.rhs, 0);
  EXPECT_NEAR(v.lhs, d_t2S_t1, 1e-8);
  EXPECT_TRUE(derivative_identity_check(1, 0, grid_spec::log_spaced(0.1, 20, 8)).passed());
  EXPECT_TRUE(derivative_identity_check(0.6, 0.5, grid_spec{{2.0}, 0}).passed());
}

TEST(Hankel, TransferIdentities) {
  auto a = identity_transfer(2, 1, 1, 0, 1);
  EXPECT_NEAR(a.rhs, -0.0735583856898297163957534042892, 1e-12);
  EXPECT_LT(a.difference(), 1e-6);
  auto b = identity_transfer_H(2, 1, 1.0 / 6, 0, 1);
  EXPECT_LT(b.difference(), 1e-6);
  EXPECT_LT(identity_transfer(2.5, 0.5, 0.3, 0.5, 0.7).difference(), 1e-6);
  EXPECT_THROW(identity_transfer(1, 1, 1, 0, 1), domain_error);
}

TEST(CompleteMonotonicity, Probes) {
  auto g = grid_spec::log_spaced(1e-2, 1e4, 25);
  EXPECT_TRUE(cm_probe(2, 1, 1, 8, g).passed());
  EXPECT_TRUE(cm_probe(1, 0, 1, 8, g, true).passed());
  auto mid = cm_probe(0.24, 0, 1, 8, g);
  EXPECT_FALSE(mid.passed());
  // the failure is genuine and sits at large t, where psi ~ -(p - 1/6) nu / t
  EXPECT_FALSE(mid.violations.back().inconclusive);
  EXPECT_GT(mid.violations.back().point, 10);
  EXPECT_THROW(cm_probe(1, 0, 1, 2, grid_spec{{0.0, 1.0}, 0}), domain_error);
}

TEST(Reports, JsonAndMerge) {
  auto r = monotonicity_check(1, 10, 0, grid_spec{{0.1, 5.0}, 0});
  auto j = to_json(r);
  EXPECT_EQ(j["check_name"], "monotonicity_H");
  EXPECT_EQ(j["total"], 2);
  EXPECT_EQ(j["passed"], false);
  EXPECT_EQ(j["violations"][0]["params"]["b"], 10.0);
  EXPECT_LT(j["violations"][0]["margin"].get<double>(), 0);
  verification_report m;
  m.merge(r);
  m.merge(r);
  EXPECT_EQ(m.total, 4);
  EXPECT_EQ(m.violations.size(), 2 * r.violations.size());
}
