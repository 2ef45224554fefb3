#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mathieu/quadrature.hpp"
#include "mathieu/series.hpp"

using namespace mathieu;

namespace {

const mathieu_params classical = mathieu_params::make(1, 2, 1, 0);

template <typename Real>
void expect_contains(const eval_result<Real>& r, long double truth) {
  EXPECT_LE((long double)r.lower(), truth) << (long double)r.value;
  EXPECT_GE((long double)r.upper(), truth) << (long double)r.value;
}

}  // namespace

TEST(Params, DeltaConstraints) {
  try {
    mathieu_params::make(1, 2, 0, 0);
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_STREQ(e.what(), "delta must exceed 1");
  }
  EXPECT_NO_THROW(mathieu_params::make(1, 2, 0, 0, series_kind::alternating));
  try {
    mathieu_params::make(2, 1, 0, 0, series_kind::alternating);
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_STREQ(e.what(), "delta must exceed 0");
  }
  EXPECT_THROW(mathieu_params::make(1, 2, 1, -1), domain_error);
  EXPECT_THROW(mathieu_params::make(-0.5, 2, 1, 0), domain_error);
  EXPECT_NO_THROW(mathieu_params::s_mu(1, -2.5));
  EXPECT_THROW(mathieu_params::s_mu(0, 0), domain_error);
}

TEST(Kernel, Values) {
  EXPECT_DOUBLE_EQ(g_eval(classical, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(g_eval(mathieu_params::make(0, 2.7, 0.4, 0), 0.0), 1.0);
  EXPECT_THROW(g_eval(mathieu_params::make(0.5, 2, 1, 0), -0.1), domain_error);
  EXPECT_NO_THROW(g_eval(classical, -0.5));
}

TEST(Kernel, JetMatchesPowerSeries) {
  // g = sum_k (-1)^k Gamma(mu+k+1)/(Gamma(mu+1) k!) x^{gamma + k alpha} on [0,1)
  for (auto p : {classical, mathieu_params::make(2, 3, 0.5, 0), mathieu_params::make(0, 1, 2.5, 0)}) {
    const double x = 0.1;
    const int order = 6;
    auto j = g_jet(p, x, order);
    for (int d = 0; d <= order; ++d) {
      double s = 0, c = 1;
      for (int k = 0; k < 40; ++k) {
        if (k) c *= -(p.mu + k) / k;
        double e = p.gamma + k * p.alpha;
        // d-th Taylor coefficient of x^e: binom(e, d) x^{e-d}
        double b = 1;
        for (int i = 0; i < d; ++i) b *= (e - i) / (i + 1);
        if (b != 0) s += c * b * std::pow(x, e - d);
      }
      EXPECT_NEAR(j.coeff(d), s, 1e-12 * (1 + std::abs(s))) << d;
    }
  }
}

TEST(Kernel, Smoothness) {
  auto a = g_smoothness(mathieu_params::make(0.5, 2, 1, 0));
  EXPECT_EQ(a.r, 0);
  for (auto [q, v] : a.initial_derivs) EXPECT_EQ(v, 0.0);
  auto b = g_smoothness(mathieu_params::make(2, 1.5, 2, 0));
  EXPECT_EQ(b.r, 3);
  ASSERT_EQ(b.initial_derivs.size(), 4u);
  EXPECT_EQ(b.initial_derivs[2].second, 2.0);
  EXPECT_EQ(b.initial_derivs[0].second, 0.0);
  EXPECT_EQ(b.initial_derivs[3].second, 0.0);
  auto c = g_smoothness(classical, 11);
  EXPECT_TRUE(c.is_infinite());
  for (auto [q, v] : c.initial_derivs) EXPECT_EQ(v != 0, q % 2 == 1) << q;
  // g'''(0) = 3! * (-2)
  EXPECT_DOUBLE_EQ(c.initial_derivs[3].second, -12.0);

  auto p = mathieu_params::make(2, 1.5, 2, 0);
  EXPECT_NO_THROW(g_jet(p, 0.0, 3));
  EXPECT_THROW(g_jet(p, 0.0, 4), order_error);
  EXPECT_DOUBLE_EQ(g_jet(p, 0.0, 3).deriv(2), 2.0);
}

TEST(Kernel, TotalVariation) {
  EXPECT_DOUBLE_EQ(g_total_variation(mathieu_params::make(0, 2, 1, 0)), 1.0);
  EXPECT_NEAR(g_total_variation(classical), 2 * std::sqrt(1.0 / 3) * 0.5625, 1e-15);
  EXPECT_NEAR(g_total_variation(classical), 0.64952, 1e-5);
  EXPECT_NEAR(g_total_variation(mathieu_params::make(2, 2, 1, 0)), 0.5, 1e-15);
  // cross-check by quadrature of |g'|
  for (auto p : {classical, mathieu_params::make(2, 2, 1, 0), mathieu_params::make(0.7, 1.3, 0.9, 0)}) {
    auto dg = [&](double x) { return std::abs(g_jet(p, x, 1).deriv(1)); };
    double x0 = std::pow(p.gamma / p.delta(), 1 / p.alpha);
    double v = quad::robust(dg, 0.0, x0, 1e-12).value + quad::half_line(dg, x0).value;
    EXPECT_NEAR(v, g_total_variation(p), 1e-8);
  }
}

TEST(Kernel, ConvexityThreshold) {
  for (auto p : {classical, mathieu_params::make(0.5, 2, 1, 0), mathieu_params::make(2, 1.5, 2, 0), mathieu_params::make(1.3, 3, 0.2, 0)}) {
    double yc = detail::convexity_threshold(p);
    EXPECT_LT(g_jet(p, yc * 0.99, 2).deriv(2), 0);
    for (double y = yc * 1.000001; y < 100; y *= 1.05) EXPECT_GE(g_jet(p, y, 2).deriv(2), 0) << y;
  }
  EXPECT_NEAR(detail::convexity_threshold(classical), 1.0, 1e-8);
}

TEST(TailIntegral, ClosedForms) {
  for (double t : {0.0, 0.3, 1.0, 7.5}) {
    EXPECT_NEAR(tail_integral(classical, t), 0.5 / (t * t + 1), 1e-15);
    EXPECT_NEAR(tail_integral(mathieu_params::make(0, 1, 2, 0), t), 0.5 / ((1 + t) * (1 + t)), 1e-14);
  }
  EXPECT_NEAR(tail_integral(mathieu_params::make(0, 2, 1, 0), 0.0), std::numbers::pi / 4, 1e-15);
  // generic parameters against mpmath quad
  auto p = mathieu_params::make(0.5, 1.5, 1.2, 0);
  EXPECT_NEAR(tail_integral(p, 2.0), 0.1109437990620895745809430396435719877801, 1e-11 * 0.111);
  // and against tanh-sinh / exp-sinh quadrature
  for (double t : {0.0, 0.4, 3.0, 40.0}) {
    double q = quad::half_line([&](double x) { return g_eval(p, x); }, t).value;
    EXPECT_NEAR(tail_integral(p, t), q, 1e-11 * q);
  }
  EXPECT_THROW(tail_integral(mathieu_params::make(1, 2, 0, 0, series_kind::alternating), 0.0), divergence_error);
  EXPECT_THROW(tail_integral(mathieu_params::make(1, 2, 0, 0, series_kind::alternating), 3.0), divergence_error);
}

TEST(EvalS, ZetaAndClassical) {
  const long double two_zeta3 = 2.40411380631918857079947632302289998L;
  auto r = eval_S<long double>(classical, 0.0L, 1e-17L);
  expect_contains(r, two_zeta3);
  EXPECT_LT(r.err_lo + r.err_hi, 1e-16L);
  expect_contains(eval_S(classical, 1.0, 1e-15), 0.794233542759318865L);
  auto t2 = eval_S(classical, 2.0);
  EXPECT_LT(t2.upper(), 0.25);
  EXPECT_EQ(t2.method, eval_method::direct);
}

TEST(EvalS, GenericOracle) {
  auto p = mathieu_params::make(0.5, 1.5, 1.2, 0.3);
  auto r = eval_S(p, 3.0, 1e-14);
  expect_contains(r, 0.131847453348853470803324009604431819227L);
  auto q = mathieu_params::make(0.5, 1.5, 1.2, 0.3, series_kind::alternating);
  auto a = eval_S_alt(q, 3.0, 1e-14);
  expect_contains(a, 0.01952294756138770866119194046365150888423L);
}

TEST(EvalS, PoissonClosedForms) {
  auto p = mathieu_params::make(0, 2, 0, 0);
  auto pa = mathieu_params::make(0, 2, 0, 0, series_kind::alternating);
  const double pi = std::numbers::pi;
  for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    double s = pi / t - 1 / (t * t) + 2 * pi / (t * std::expm1(2 * pi * t));
    double a = 1 / (t * t) - 2 * pi / (t * (std::exp(pi * t) - std::exp(-pi * t)));
    EXPECT_NEAR(eval_S(p, t, 1e-15).value, s, 1e-12 * s) << t;
    EXPECT_NEAR(eval_S_alt(pa, t, 1e-15).value, a, 1e-12 * a) << t;
  }
  EXPECT_NEAR(eval_S(p, 1.0).value, 2.1533480949371619, 1e-12);
  EXPECT_NEAR(eval_S_alt(pa, 1.0).value, 0.72797094501786686, 1e-12);
}

TEST(EvalS, RealOffsetForm) {
  // u = -2.5: the terms at y = -1.5, -0.5 cancel those at 0.5, 1.5
  auto r = eval_S(mathieu_params::s_mu(1, -2.5), 1.0, 1e-15);
  expect_contains(r, 0.193044989190546878144667342396743296743L);
  // integer shift drops the k = -u term
  auto a = eval_S(mathieu_params::s_mu(1.5, -3), 0.7, 1e-15);
  auto b = eval_S(mathieu_params::make(1, 2, 1.5, 2), 0.7, 1e-15);
  EXPECT_NEAR(a.value, b.value, 1e-14);
}

TEST(EvalS, LongDoubleAgrees) {
  for (double t : {0.01, 1.0, 30.0}) {
    auto d = eval_S(classical, t, 1e-15);
    auto l = eval_S<long double>(classical, t, 1e-19L);
    EXPECT_LE(std::abs((long double)d.value - l.value), (long double)d.err_hi + l.err_hi);
  }
}

TEST(EvalS, TermCap) {
  // delta barely above 1 makes the direct tail bracket converge very slowly
  auto p = mathieu_params::make(0, 1, 0.02, 0);
  EXPECT_THROW(eval_S(p, 1.0, 1e-15), tolerance_error);
}

TEST(Identities, AlternatingFromPlain) {
  auto check = [](double g, double a, double mu, double u, double t) {
    auto p = mathieu_params::make(g, a, mu, u);
    double lhs = eval_S_alt(p, t, 1e-14).value;
    double rhs = eval_S(p, t, 1e-14).value - std::pow(2.0, 1 - p.delta()) * eval_S(mathieu_params::make(g, a, mu, u / 2), t / 2, 1e-14).value;
    EXPECT_NEAR(lhs, rhs, 1e-10) << g << " " << a << " " << mu << " " << u << " " << t;
  };
  check(1, 2, 1, 0.3, 3);
  for (double g : {0.0, 0.5, 2.0})
    for (double a : {1.5, 2.0, 3.0})
      for (double u : {0.0, 0.7})
        for (double t : {0.4, 2.5}) check(g, a, 1.4, u, t);
}

TEST(Identities, DianandaBound) {
  for (double mu : {0.5, 1.0, 2.0, 5.0})
    for (double t = 0.1; t < 60; t *= 1.7) {
      auto r = eval_S(mathieu_params::make(1, 2, mu, 0), t, 1e-15);
      EXPECT_LT(r.upper(), 1 / (mu * std::pow(t, 2 * mu))) << mu << " " << t;
    }
}

TEST(Identities, VariationBrackets) {
  // |t^delta S~ - g(0)| <= V and |t^delta (S - C t^{1-delta}) + (1+2u) g(0)| <= (1+2u) V
  for (auto base : {classical, mathieu_params::make(0, 2, 1, 0), mathieu_params::make(2, 2, 1.5, 0), mathieu_params::make(0.5, 1.5, 1, 0)})
    for (double u : {0.0, 0.5, 2.0}) {
      auto p = base;
      p.u = u;
      const double V = g_total_variation(p), g0 = p.gamma == 0 ? 1.0 : 0.0, d = p.delta();
      const double a = (p.gamma + 1) / p.alpha;
      const double C = 2 / p.alpha * boost::math::beta(a, p.mu + 1 - a);
      for (double t : {0.5, 2.0, 10.0, 40.0}) {
        double td = std::pow(t, d);
        auto s = eval_S_alt(p, t, 1e-14);
        EXPECT_LE(std::abs(td * s.value - g0), V + 1e-9);
        auto S = eval_S(p, t, 1e-14);
        EXPECT_LE(std::abs(td * (S.value - C / std::pow(t, d - 1)) + (1 + 2 * u) * g0), (1 + 2 * u) * V + 1e-9);
      }
    }
}

TEST(Identities, EvenKernelAlternatingDecay) {
  // gamma, alpha even, u = 0: t^{alpha(mu+1)} S~ -> (-1)^gamma E_gamma(0) faster than any power.
  // The remainder oscillates, so envelopes over t-windows are compared.
  struct kernel {
    mathieu_params p;
    long double limit;
  };
  for (auto [p, limit] : {kernel{mathieu_params::make(2, 2, 1, 0, series_kind::alternating), 0.0L},  // E_2(0) = 0
                          kernel{mathieu_params::make(0, 4, 0.5, 0, series_kind::alternating), 1.0L}}) {
    const long double lead = p.alpha * (p.mu + 1);
    for (int n = 1; n <= 3; ++n) {
      auto envelope = [&](long double t0) {
        long double m = 0;
        for (long double t = t0; t <= t0 + 2; t += 0.5L) {
          auto r = eval_S_alt<long double>(p, t, 1e-28L);
          long double res = std::abs(std::pow(t, lead) * r.value - limit) + std::pow(t, lead) * r.err_hi;
          m = std::max(m, res * std::pow(t, (long double)p.alpha * n));
        }
        return m;
      };
      EXPECT_LT(envelope(14), envelope(4) / 100) << p.gamma << " " << n;
    }
  }
}

TEST(Asymptotic, ClassicalCoefficients) {
  auto s = asym_S(classical, 6);
  EXPECT_DOUBLE_EQ(double(s.leading->coeff), 1.0);
  EXPECT_DOUBLE_EQ(double(s.leading->exponent), -2.0);
  for (int k = 0; k < 6; ++k) {
    // (-1)^{k+1} B_{2k+2} t^{-2k-4}
    double expect = (k % 2 ? 1 : -1) * bernoulli_number(2 * k + 2).convert_to<double>();
    EXPECT_NEAR(double(s.stream[k].coeff), expect, 1e-15 * std::abs(expect));
    EXPECT_DOUBLE_EQ(double(s.stream[k].exponent), -2.0 * k - 4);
  }
  EXPECT_NEAR(double(s.stream[0].coeff), -1.0 / 6, 1e-16);
}

TEST(Asymptotic, RealOffsetForm) {
  for (double mu : {0.5, 2.5})
    for (double u : {-1.7, 0.3, 0.5}) {
      auto s = asym_S(mathieu_params::s_mu(mu, u), 3);
      EXPECT_NEAR(double(s.leading->coeff), 1 / mu, 1e-14);
      EXPECT_NEAR(double(s.stream[0].coeff), -(u * u + u + 1.0 / 6), 1e-14);
      EXPECT_NEAR(double(s.stream[1].coeff), ((u * u + u) * (u * u + u) - 1.0 / 30) * (mu + 1) / 2, 1e-14);
      EXPECT_DOUBLE_EQ(double(s.stream[1].exponent), -2 * mu - 4);
    }
  EXPECT_NEAR(double(asym_S(mathieu_params::make(1, 2, 1, 0.5), 1).stream[0].coeff), -11.0 / 12, 1e-15);
  EXPECT_THROW(asym_S(mathieu_params::make(3.5, 2, 2, 0), 3), regime_error);
  EXPECT_THROW(asym_S_alt(mathieu_params::make(1, 2.5, 1, 0), 3), regime_error);
}

TEST(Asymptotic, AgreesWithDirectSums) {
  auto p = mathieu_params::make(1, 2, 1, 0.3);
  auto s = asym_S(p, 8);
  auto a = asym_S_alt(p, 8);
  const long double t = 30;
  auto d = eval_S<long double>(p, t, 1e-22L);
  EXPECT_NEAR(double(d.value), double(s.evaluate(t, 8)), 1e-20);
  auto da = eval_S_alt<long double>(p, t, 1e-20L);
  EXPECT_NEAR(double(da.value), 0.0000009878971172751385809679798015912285422765, 1e-20);
  EXPECT_NEAR(double(da.value), double(a.evaluate(t, 8)), 1e-19);
  // residual after n stream terms scales like t^{-alpha(n+mu+1)}
  for (int n : {1, 2, 3}) {
    long double r1 = (eval_S<long double>(p, 10.0L, 1e-26L).value - s.evaluate(10.0L, n)) * std::pow(10.0L, 2.0L * (n + 2));
    long double r2 = (eval_S<long double>(p, 20.0L, 1e-27L).value - s.evaluate(20.0L, n)) * std::pow(20.0L, 2.0L * (n + 2));
    EXPECT_LT(std::abs(r1 / r2 - 1), 0.5L) << n;
  }
}

TEST(Dispatch, Regimes) {
  auto small = eval_auto(classical, 0.5, 1e-14);
  EXPECT_EQ(small.method, eval_method::direct);
  auto big = eval_auto(classical, 1000.0, 1e-20);
  EXPECT_EQ(big.method, eval_method::asymptotic);
  EXPECT_FALSE(big.rigorous);
  auto oracle = eval_S<long double>(classical, 1000.0L, 1e-20L);
  EXPECT_NEAR(big.value, double(oracle.value), 1e-12 * double(oracle.value));
  auto c = cross_validate(classical, 50.0, 1e-14);
  EXPECT_TRUE(c.overlap);
  EXPECT_EQ(c.second.method, eval_method::euler_maclaurin);
  // non-smooth kernel at large t goes through Euler-Maclaurin with n <= r
  auto p = mathieu_params::make(0.5, 2, 1, 0);
  auto e = eval_auto(p, 200.0, 1e-8);
  EXPECT_EQ(e.method, eval_method::euler_maclaurin);
  EXPECT_LE(e.lower(), 0.0000019632355501800837916163033009828069331);
  EXPECT_GE(e.upper(), 0.0000019632355501800837916163033009828069331);
}

TEST(Theta, PhiValuesAndBounds) {
  EXPECT_NEAR(phi_u(0.0, 1.0), 0.809762797142621417820198096486, 1e-15);
  // x -> 0: phi_0 = 1 - x/6 + O(x^2)
  EXPECT_NEAR(phi_u(0.0, 1e-5), 1 - 1e-5 / 6, 1e-10);
  for (double u : {0.0, 0.5, 1.0, 2.0})
    for (double x = 1e-3; x < 200; x *= 2.3) {
      double v = -log_phi_u(u, x) / x;
      EXPECT_GT(v, u * u + u) << u << " " << x;
      EXPECT_LT(v, (u + 1) * (u + 1)) << u << " " << x;
    }
  // large x: log form stays finite where phi underflows
  EXPECT_TRUE(std::isfinite(log_phi_u(1.0, 1e4)));
  EXPECT_THROW(phi_u(0.0, 0.0), domain_error);
}
