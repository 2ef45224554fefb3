#pragma once

// Named verification suites over default grids, as run by the command line
// front end. Each suite returns its reports sorted by check name.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "checks.hpp"
#include "emsum.hpp"
#include "error.hpp"
#include "series.hpp"
#include "sharp.hpp"

namespace mathieu {

struct suite_options {
  double tolerance = 1e-6;  // identity agreement (hankel suite)
  double b = 1.0 / 6;       // shift in H_{1,b} (monotone suite)
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"classical", "em", "asymptotic", "hermite", "hankel", "cm", "monotone"};
  return names;
}

namespace detail {

inline smooth_function exp_minus() {
  smooth_function f([](auto x) {
    using std::exp;
    return exp(-x);
  });
  f.with_domain_left(-std::numeric_limits<double>::infinity()).with_tail([](double t) { return std::exp(-t); });
  return f;
}

inline smooth_function power_kernel_fn() {
  smooth_function f([](auto x) { return x / ((x * x + 1.0) * (x * x + 1.0)); });
  f.with_domain_left(-0.9).with_tail([](double t) { return 0.5 / (t * t + 1); });
  return f;
}

inline std::vector<verification_report> suite_classical() {
  auto g = grid_spec::log_spaced(1e-3, 1e3, 60);
  g.points.insert(g.points.begin(), 0.0);
  return {classical_inequalities_check(g), wilkins_style_check(1, 0, grid_spec::linear(0, 20, 41))};
}

// finite identity residuals and remainder-bound soundness on geometric sums
inline std::vector<verification_report> suite_em() {
  verification_report id;
  id.check_name = "em_finite_identity";
  auto F = exp_minus(), K = power_kernel_fn();
  for (double u : {-0.7, -0.25, 0.0, 0.4, 1.5})
    for (int n : {0, 1, 3, 6}) {
      auto a = em_finite_identity(F, 7, 0.2, u, n);
      id.expect_less({{"kernel", 0}, {"u", u}, {"n", n}}, 0.2, std::abs(a.lhs - a.rhs), 0, 1e-9, 0, false);
      auto b = em_finite_identity(K, 12, 0.3, u, n);
      id.expect_less({{"kernel", 1}, {"u", u}, {"n", n}}, 0.3, std::abs(b.lhs - b.rhs), 0, 1e-9, 0, false);
    }
  verification_report rb;
  rb.check_name = "em_remainder_bound";
  for (double u : {0.0, 0.5, -0.5})
    for (int n : {1, 2, 3})
      for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
        auto r = em_sum(F, eps, u, n);
        const double truth = std::exp(-eps * u) / std::expm1(eps);
        rb.expect_less({{"u", u}, {"n", n}}, eps, std::abs(truth - r.sum_estimate), 0, r.remainder_bound, 0, false);
      }
  return {id, rb};
}

// truncated expansions against the rigorous evaluator, and the profile limit
inline std::vector<verification_report> suite_asymptotic() {
  verification_report tr;
  tr.check_name = "asymptotic_truncation";
  for (double mu : {0.5, 1.0, 2.0})
    for (double u : {0.0, 0.25, 0.5}) {
      auto p = mathieu_params::make(1, 2, mu, u);
      auto s = asym_S(p, 4);
      for (double t : {10.0, 20.0, 40.0}) {
        const long double tl = t;
        auto e = eval_S<long double>(p, tl, 1e-24L, tail_rule::euler_maclaurin);
        const long double res = std::abs(e.value - s.evaluate(tl, 3));
        const long double next = std::abs(s.next_term(tl, 3));
        tr.expect_less({{"mu", mu}, {"u", u}}, t, double(res), double(e.err_hi), double(2 * next), 0);
      }
    }
  verification_report lim;
  lim.check_name = "profile_limit";
  for (double mu : {0.5, 1.0, 3.0})
    for (double u : {0.0, 0.25, 1.0}) {
      auto fw = s_mu_framework(mu, u);
      const double f = f_profile(fw, 1e4);
      lim.expect_less({{"mu", mu}, {"u", u}}, 1e4, std::abs(f - fw.f_inf()), 0, 1e-5, 0, false);
    }
  return {tr, lim};
}

inline std::vector<verification_report> suite_hermite() {
  verification_report hh;
  hh.check_name = "hermite_hadamard";
  for (double mu : {0.5, 1.0, 3.0})
    for (double a : {0.5, 1.0, 4.0}) hh.merge(hermite_hadamard_check([mu](double x) { return std::pow(x, -mu - 1); }, a, a + 1.5));
  for (double lam : {0.3, 1.0, 2.0}) hh.merge(hermite_hadamard_check([lam](double x) { return std::exp(-lam * x); }, -1, 2));
  verification_report fsf;
  fsf.check_name = "fsf_bounds";
  for (double mu : {0.5, 1.0, 2.0, 5.0})
    for (double u : {-1.25, -1.0, -0.5, 0.0, 0.5, 2.0})
      for (double y : {-0.2, 0.0, 1.0, 10.0}) {
        const bool any = (u >= -1 && u * u + u + y > 0) || (1 + u) * (1 + u) + y > 0;
        if (any) fsf.merge(fsf_bounds_check(convex_kernel::power(mu), u, y));
      }
  for (double lam : {0.3, 1.0})
    for (double u : {-1.0, 0.0, 1.0})
      for (double y : {-2.0, 0.0, 3.0}) fsf.merge(fsf_bounds_check(convex_kernel::exponential(lam), u, y));
  verification_report th;
  th.check_name = "theta_bounds";
  for (double u : {0.0, 0.5, 1.0, 3.0}) th.merge(theta_bounds_check(u, grid_spec::log_spaced(1e-3, 50, 40)));
  return {fsf, hh, th};
}

inline std::vector<verification_report> suite_hankel(double tol) {
  verification_report r;
  r.check_name = "hankel_identities";
  auto add = [&](int id, std::map<std::string, double> params, double point, const identity_value& v) {
    params["identity"] = id;
    r.expect_less(params, point, v.difference(), 0, tol, 0, false);
  };
  for (auto [p, a, mu] : {std::tuple{1.0, 1.0, 1.0}, {0.5, 2.0, 0.75}, {2.0, 0.3, 2.5}})
    add(0, {{"p", p}, {"mu", mu}}, a, identity_laplace_bessel(p, a, mu));
  for (auto [mu, u, t] : {std::tuple{1.0, 0.0, 2.0}, {0.6, 0.5, 1.0}, {2.0, 1.0, 4.0}})
    add(1, {{"mu", mu}, {"u", u}}, t, identity_series_transform(mu, u, t));
  for (auto [p, u, mu, t] : {std::tuple{0.4, 0.0, 1.0, 1.0}, {1.5, 0.5, 0.8, 3.0}, {0.75, 0.2, 2.0, 0.5}})
    add(2, {{"p", p}, {"u", u}, {"mu", mu}}, t, identity_difference_transform(p, u, mu, t));
  for (auto [mu, u, t] : {std::tuple{1.0, 0.0, 1.0}, {0.6, 0.5, 2.0}, {2.0, 0.0, 5.0}})
    add(3, {{"mu", mu}, {"u", u}}, t, identity_derivative(mu, u, t));
  add(4, {{"nu", 2}, {"mu", 1}, {"p", 1}, {"u", 0}}, 1, identity_transfer(2, 1, 1, 0, 1));
  add(5, {{"nu", 2}, {"mu", 1}, {"b", 1.0 / 6}, {"u", 0}}, 1, identity_transfer_H(2, 1, 1.0 / 6, 0, 1));
  return {r};
}

inline std::vector<verification_report> suite_cm() {
  auto g = grid_spec::log_spaced(1e-2, 1e4, 25);
  return {cm_probe(2, 1, 1, 8, g), cm_probe(1, 0, 1, 8, g, true)};
}

inline std::vector<verification_report> suite_monotone(double b) {
  return {monotonicity_check(1, b, 0, grid_spec::linear(0.05, 10, 200))};
}

}  // namespace detail

inline std::vector<verification_report> run_suite(const std::string& name, const suite_options& opt = {}) {
  std::vector<verification_report> out;
  auto add = [&](std::vector<verification_report> v) { out.insert(out.end(), v.begin(), v.end()); };
  const bool all = name == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw domain_error("unknown suite: " + name);
  if (all || name == "classical") add(detail::suite_classical());
  if (all || name == "em") add(detail::suite_em());
  if (all || name == "asymptotic") add(detail::suite_asymptotic());
  if (all || name == "hermite") add(detail::suite_hermite());
  if (all || name == "hankel") add(detail::suite_hankel(opt.tolerance));
  if (all || name == "cm") add(detail::suite_cm());
  if (all || name == "monotone") add(detail::suite_monotone(opt.b));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.check_name < b.check_name; });
  return out;
}

}  // namespace mathieu
