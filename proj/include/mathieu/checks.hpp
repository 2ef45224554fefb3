#pragma once

// Grid-based verifiers for the inequalities and identities around S_mu(t,u):
// Hermite-Hadamard and convex-series bounds, the classical Mathieu-type
// inequalities, the |1/(mu(p^2+t^2)^mu) - S_mu| bound, sign of g_{p,u},
// monotonicity through H_{nu,b}, the Bessel-integral identities and the
// finite-order complete-monotonicity probe.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "error.hpp"
#include "hankel.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "series.hpp"
#include "sharp.hpp"

namespace mathieu {

namespace detail {

constexpr double dbl_eps = std::numeric_limits<double>::epsilon();

inline mathieu_params smu(double mu, double u) { return mathieu_params::make(1, 2, mu, u); }

// rigorous S_mu(t,u) in long double with relative accuracy ~1e-20
inline eval_result<long double> s_mu_ld(double mu, double u, long double t) {
  const long double scale = 1 / ((long double)mu * std::pow(1 + t * t, (long double)mu));
  return eval_S<long double>(smu(mu, u), t, 1e-20L * scale, tail_rule::euler_maclaurin);
}

// S_mu(t,u) in double with absolute accuracy ~1e-15 of the leading size
inline eval_result<double> s_mu_d(double mu, double u, double t) {
  return eval_S<double>(smu(mu, u), t, 1e-15 / (mu * std::pow(1 + t * t, mu)));
}

// 1/(nu (p2 + y^2)^nu) - S_nu(y,u), cancellation-free for large y (non-rigorous)
inline long double leading_minus_S(double nu, double p2, double u, double y) {
  if (y > 1) {
    const long double x = s_mu_defect(nu, u, y).value;
    const long double lead = std::expm1(-(long double)nu * std::log1p((long double)p2 / ((long double)y * y)));
    return std::pow((long double)y, -2 * (long double)nu) / nu * (lead - x);
  }
  const long double s = estimate_S<long double>(smu(nu, u), (long double)y).value;
  return 1 / ((long double)nu * std::pow((long double)p2 + (long double)y * y, (long double)nu)) - s;
}

// H_{nu,b}(y,u) = nu S_nu - (nu+1) S_{nu+1} (y^2+b) (non-rigorous)
inline long double H_nub_fast(double nu, double b, double u, double y) {
  if (y > 1) {
    const long double xn = s_mu_defect(nu, u, y).value, xn1 = s_mu_defect(nu + 1, u, y).value;
    const long double y2 = (long double)y * y;
    return std::pow(y2, -(long double)nu) * (xn - xn1 - (long double)b / y2 * (1 + xn1));
  }
  const long double sn = estimate_S<long double>(smu(nu, u), (long double)y).value;
  const long double sn1 = estimate_S<long double>(smu(nu + 1, u), (long double)y).value;
  return nu * sn - (nu + 1) * sn1 * ((long double)y * y + b);
}

}  // namespace detail

// (b-a) g((a+b)/2) <= int_a^b g <= (b-a) (g(a)+g(b))/2 for convex g
inline verification_report hermite_hadamard_check(const std::function<double(double)>& g, double a, double b) {
  if (!(b > a)) throw domain_error("Hermite-Hadamard check needs b > a");
  verification_report r;
  r.check_name = "hermite_hadamard";
  const double w = b - a;
  const double mid = w * g(0.5 * (a + b)), trap = w * (g(a) + g(b)) / 2;
  auto I = quad::robust(g, a, b, 1e-14 * std::max(1.0, std::abs(trap)));
  const std::map<std::string, double> params{{"a", a}, {"b", b}};
  r.expect_less(params, a, mid, 4 * detail::dbl_eps * std::abs(mid), I.value, I.error);
  r.expect_less(params, b, I.value, I.error, trap, 4 * detail::dbl_eps * std::abs(trap));
  return r;
}

// F((1+u)^2+y) + (1/2+u) g((1+u)^2+y) <= S(u,y) <= F(u^2+u+y). The right side
// needs u >= -1 and u^2+u+y in the domain of g, the left u >= -3/2 and
// (1+u)^2+y in the domain (for g on (0,inf): u^2+u+y > 0 and y > -(1+u)^2).
inline verification_report fsf_bounds_check(const convex_kernel& k, double u, double y) {
  const bool right = u >= -1 && u * u + u + y > k.domain_left;
  const bool left = u >= -1.5 && (1 + u) * (1 + u) + y > k.domain_left;
  if (!left && !right) throw precondition_error("neither side of the convex-series bounds applies");
  verification_report r;
  r.check_name = "fsf_bounds";
  auto s = kernel_series(k, u, y);
  const std::map<std::string, double> params{{"u", u}, {"y", y}};
  if (left) {
    const double x1 = (1 + u) * (1 + u) + y;
    const double lo = k.F(x1) + (0.5 + u) * k.g(x1);
    r.expect_less(params, y, lo, 8 * detail::dbl_eps * (std::abs(k.F(x1)) + std::abs((0.5 + u) * k.g(x1))), s.value, s.err_lo);
  }
  if (right) {
    const double hi = k.F(u * u + u + y);
    r.expect_less(params, y, s.value, s.err_hi, hi, 8 * detail::dbl_eps * std::abs(hi));
  }
  return r;
}

// u^2+u < -ln(phi_u(x))/x < (u+1)^2
inline verification_report theta_bounds_check(double u, const grid_spec& xs) {
  xs.validate();
  if (!(u >= 0)) throw domain_error("u must be nonnegative");
  verification_report r;
  r.check_name = "theta_bounds";
  for (double x : xs.points) {
    if (!(x > 0)) continue;
    const double v = -log_phi_u<double>(u, x) / x;
    // log phi is accurate to a few ulps of its largest part
    const double err = 16 * detail::dbl_eps * (std::abs(std::log(2 * x * (1 + u))) + (1 + u) * (1 + u) * x + 1) / x;
    r.expect_less({{"u", u}}, x, u * u + u, 0, v, err);
    r.expect_less({{"u", u}}, x, v, err, (u + 1) * (u + 1), 0);
  }
  return r;
}

// Mathieu S < 1/t^2; 1/(t^2+a) < S < 1/(t^2+b) with a = 1/(2 zeta(3)), b = 1/6;
// Wilkins sum k/(k^2+t^2)^3 < (sum k/(k^2+t^2)^2)^2; S_mu < 1/(mu t^{2mu})
inline verification_report classical_inequalities_check(const grid_spec& ts, const std::vector<double>& diananda_mu = {0.5, 1, 2, 5}) {
  ts.validate();
  verification_report r;
  r.check_name = "classical_inequalities";
  auto s0 = detail::s_mu_d(1, 0, 0);
  const double a = 1 / s0.value, a_err = (s0.err_hi + s0.err_lo) / (s0.value * s0.value), b = 1.0 / 6;
  const double e = detail::dbl_eps;
  for (double t : ts.points) {
    if (!(t >= 0)) throw domain_error("t must be nonnegative");
    auto s1 = detail::s_mu_d(1, 0, t);
    auto s2 = detail::s_mu_d(2, 0, t);
    // Wilkins, also at t = 0
    const double wl = s2.value / 2, wr = s1.value * s1.value / 4;
    r.expect_less({{"inequality", 3}}, t, wl, s2.err_hi / 2 + e * wl, wr, s1.value * s1.err_lo / 2 + 4 * e * wr);
    if (t == 0) continue;
    const double t2 = t * t;
    r.expect_less({{"inequality", 0}}, t, s1.value, s1.err_hi, 1 / t2, e / t2);
    const double up = 1 / (t2 + b), lo = 1 / (t2 + a);
    r.expect_less({{"inequality", 1}}, t, lo, a_err * lo * lo + 2 * e * lo, s1.value, s1.err_lo);
    r.expect_less({{"inequality", 2}}, t, s1.value, s1.err_hi, up, 2 * e * up);
    for (double mu : diananda_mu) {
      auto s = detail::s_mu_d(mu, 0, t);
      const double rhs = 1 / (mu * std::pow(t, 2 * mu));
      r.expect_less({{"inequality", 4}, {"mu", mu}}, t, s.value, s.err_hi, rhs, 4 * e * rhs);
    }
  }
  return r;
}

// |1/(mu(p^2+t^2)^mu) - S_mu(t,u)| < 1/(mu p^{2mu}) - S_mu(0,u) for p-u <= 1/2,
// and < S_mu(0,u) - 1/(mu p^{2mu}) for p-u >= 1
inline verification_report ner_check(double p, double u, double mu, const grid_spec& ts) {
  ts.validate();
  if (!(p > 0) || !(u > -1) || !(mu > 0)) throw domain_error("ner check needs p > 0, u > -1, mu > 0");
  const double d = p - u;
  int branch;
  if (d <= 0.5)
    branch = 1;
  else if (d >= 1)
    branch = 2;
  else
    throw regime_error("no certified bound for 1/2 < p - u < 1");
  verification_report r;
  r.check_name = "ner";
  auto s0 = detail::s_mu_d(mu, u, 0);
  const double lead0 = 1 / (mu * std::pow(p, 2 * mu));
  const double bound = branch == 1 ? lead0 - s0.value : s0.value - lead0;
  const double bound_err = std::max(s0.err_lo, s0.err_hi) + 4 * detail::dbl_eps * (lead0 + s0.value);
  const std::map<std::string, double> params{{"p", p}, {"u", u}, {"mu", mu}, {"branch", branch}};
  for (double t : ts.points) {
    if (!(t > 0)) continue;
    auto s = detail::s_mu_d(mu, u, t);
    const double lead = 1 / (mu * std::pow(p * p + t * t, mu));
    const double lhs = std::abs(lead - s.value);
    r.expect_less(params, t, lhs, std::max(s.err_lo, s.err_hi) + 4 * detail::dbl_eps * lead, bound, bound_err);
  }
  return r;
}

enum class sign_class { positive, negative, sign_changing };

inline const char* to_string(sign_class c) {
  switch (c) {
    case sign_class::positive: return "positive";
    case sign_class::negative: return "negative";
    case sign_class::sign_changing: return "sign_changing";
  }
  return "?";
}

struct sign_result {
  sign_class classification;
  double x_negative = NAN;  // a sampled point with g < 0
  double x_positive = NAN;  // a sampled point with g > 0
  bool sampling_agrees = false;
};

// sign g_{p,u}(x) = sign f_a(x), a = p - u, f_a = e^{-ax}(e^x-1) - x, evaluated as
// (1-a) x + log(-expm1(-x)/x), which stays accurate for tiny and huge x
inline double g_pu_sign_function(double p, double u, double x) {
  const double a = p - u;
  return (1 - a) * x + std::log(-std::expm1(-x) / x);
}

inline sign_result sign_g_pu(double p, double u, int samples = 4000, double x_min = 1e-6, double x_max = 1e6) {
  const double a = p - u;
  sign_result r;
  r.classification = a <= 0.5 ? sign_class::positive : (a >= 1 ? sign_class::negative : sign_class::sign_changing);
  for (int i = 0; i < samples; ++i) {
    const double x = x_min * std::pow(x_max / x_min, double(i) / (samples - 1));
    const double v = g_pu_sign_function(p, u, x);
    if (v < 0 && std::isnan(r.x_negative)) r.x_negative = x;
    if (v > 0 && std::isnan(r.x_positive)) r.x_positive = x;
  }
  const bool neg = !std::isnan(r.x_negative), pos = !std::isnan(r.x_positive);
  switch (r.classification) {
    case sign_class::positive: r.sampling_agrees = pos && !neg; break;
    case sign_class::negative: r.sampling_agrees = neg && !pos; break;
    case sign_class::sign_changing: r.sampling_agrees = neg && pos; break;
  }
  return r;
}

// H_{nu,b}(t,u) = nu S_nu - (nu+1) S_{nu+1} (t^2+b) > 0 over the grid; positive H
// means (t^2+b)^nu S_nu increases at t
inline verification_report monotonicity_check(double nu, double b, double u, const grid_spec& ts) {
  ts.validate();
  verification_report r;
  r.check_name = "monotonicity_H";
  const std::map<std::string, double> params{{"nu", nu}, {"b", b}, {"u", u}};
  for (double t : ts.points) {
    if (!(t > 0)) continue;
    auto sn = detail::s_mu_ld(nu, u, t), sn1 = detail::s_mu_ld(nu + 1, u, t);
    const long double w = (long double)t * t + b;
    const long double H = nu * sn.value - (nu + 1) * sn1.value * w;
    const long double err = nu * std::max(sn.err_lo, sn.err_hi) + (nu + 1) * w * std::max(sn1.err_lo, sn1.err_hi) +
                            8 * std::numeric_limits<long double>::epsilon() * (nu * sn.value + (nu + 1) * sn1.value * w);
    r.expect_less(params, t, 0, 0, double(H), double(err));
  }
  return r;
}

// ((nu+1) S_{nu+1})^{1/(nu+1)} < (nu S_nu)^{1/nu}, compared in logs
inline verification_report wilkins_style_check(double nu, double u, const grid_spec& ts) {
  ts.validate();
  verification_report r;
  r.check_name = "wilkins_style";
  const std::map<std::string, double> params{{"nu", nu}, {"u", u}};
  const double e = std::numeric_limits<long double>::epsilon();
  for (double t : ts.points) {
    if (!(t >= 0)) throw domain_error("t must be nonnegative");
    auto sn = detail::s_mu_ld(nu, u, t), sn1 = detail::s_mu_ld(nu + 1, u, t);
    const long double L = std::log((nu + 1) * sn1.value) / (nu + 1), R = std::log(nu * sn.value) / nu;
    const double le = double(std::max(sn1.err_lo, sn1.err_hi) / sn1.value / (nu + 1)) + 8 * e * std::abs(double(L));
    const double re = double(std::max(sn.err_lo, sn.err_hi) / sn.value / nu) + 8 * e * std::abs(double(R));
    r.expect_less(params, t, double(L), le, double(R), re);
  }
  return r;
}

// psi_{p,u,mu}(t) = 1/(mu (p+t)^mu) - S_mu(sqrt t, u). By the order shift
// (-1)^k psi^(k)_{p,u,mu} = Gamma(mu+k+1)/Gamma(mu+1) psi_{p,u,mu+k}, the k-th
// derivative sign is the sign of psi at mu+k. Values are reported scaled by
// nu t^nu (nu = mu+k); negate probes -psi. Passes iff all scaled values >= -tolerance.
inline verification_report cm_probe(double p, double u, double mu, int k_max, const grid_spec& ts, bool negate = false) {
  ts.validate();
  if (!(p >= 0) || !(u >= 0) || !(mu > 0) || k_max < 0) throw domain_error("cm probe needs p >= 0, u >= 0, mu > 0, k >= 0");
  verification_report r;
  r.check_name = negate ? "cm_probe_negative" : "cm_probe";
  for (int k = 0; k <= k_max; ++k) {
    const double nu = mu + k;
    for (double t : ts.points) {
      if (!(t > 0)) throw domain_error("cm probe needs t > 0");
      const long double tl = t;
      auto s = detail::s_mu_ld(nu, u, std::sqrt(tl));
      const long double scale = nu * std::pow(tl, (long double)nu);
      const long double lead = std::pow(tl / (p + tl), (long double)nu);
      long double v = lead - scale * s.value;
      const long double err = scale * std::max(s.err_lo, s.err_hi) + 8 * std::numeric_limits<long double>::epsilon() * (lead + scale * s.value);
      if (negate) v = -v;
      r.expect_less({{"p", p}, {"u", u}, {"mu", mu}, {"k", k}}, t, -ts.tolerance, 0, double(v), double(err), false);
    }
  }
  return r;
}

// the Bessel-integral identities, each as |lhs - rhs| <= tol
struct identity_value {
  double lhs = 0, rhs = 0;
  double difference() const { return std::abs(lhs - rhs); }
};

// 1/(mu (p^2+a^2)^mu) = c_mu int e^{-px} x^{2mu-1} j_{mu-1/2}(a x) dx
inline identity_value identity_laplace_bessel(double p, double a, double mu) {
  hankel_options o;
  o.envelope = [&](double x) { return std::exp(-p * x) * std::pow(x, 2 * mu - 1) * bessel_j0_value(mu - 0.5); };
  identity_value v;
  v.lhs = 1 / (mu * std::pow(p * p + a * a, mu));
  v.rhs = hankel_constant(mu) * bessel_integral([&](double x) { return std::exp(-p * x); }, 2 * mu - 1, mu - 0.5, a, o);
  return v;
}

// S_mu(t,u) = c_mu int e^{-ux}/(e^x-1) x^{2mu} j_{mu-1/2}(t x) dx
inline identity_value identity_series_transform(double mu, double u, double t) {
  hankel_options o;
  o.envelope = [&](double x) { return 2 * std::exp(-(1 + u) * x) * std::pow(x, 2 * mu) * bessel_j0_value(mu - 0.5) * (1 + 1 / x); };
  identity_value v;
  v.lhs = detail::s_mu_d(mu, u, t).value;
  v.rhs = hankel_constant(mu) * hankel_transform([&](double x) { return h_u(u, x) / x; }, 2 * mu + 1, t, o);
  return v;
}

// 1/(mu(p^2+t^2)^mu) - S_mu(t,u) = c_mu F_{2mu+1}(g_{p,u})(t)
inline identity_value identity_difference_transform(double p, double u, double mu, double t) {
  hankel_options o;
  o.envelope = [&](double x) { return std::exp(-std::min(p, 1 + u) * x) * (1 / x + 2) * std::pow(x, 2 * mu) * bessel_j0_value(mu - 0.5); };
  identity_value v;
  v.lhs = 1 / (mu * std::pow(p * p + t * t, mu)) - detail::s_mu_d(mu, u, t).value;
  v.rhs = hankel_constant(mu) * hankel_transform([&](double x) { return g_pu(p, u, x); }, 2 * mu + 1, t, o);
  return v;
}

// 1/(mu(p^2+t^2)^mu) - S_mu(t,u) = c_mu F_{2mu-1}(G_{p,u,mu})(t) / t^2, mu > 1/2
inline identity_value identity_parts_transform(double p, double u, double mu, double t) {
  if (!(mu > 0.5)) throw domain_error("the integrated-by-parts form needs mu > 1/2");
  hankel_options o;
  o.envelope = [&](double x) { return std::exp(-std::min(p, 1 + u) * x) * (1 / x + 4 + x) * std::pow(x, 2 * mu - 2) * (2 * mu + 2); };
  identity_value v;
  v.lhs = 1 / (mu * std::pow(p * p + t * t, mu)) - detail::s_mu_d(mu, u, t).value;
  v.rhs = hankel_constant(mu) * hankel_transform([&](double x) { return G_pum(p, u, mu, x); }, 2 * mu - 1, t, o) / (t * t);
  return v;
}

// d/dt {t^{2mu} S_mu(t,u)} = -c_mu t^{2mu-1} F_{2mu+1}(h'_u)(t). The left side is a
// Richardson-extrapolated central difference with h = 1e-5 t.
inline identity_value identity_derivative(double mu, double u, double t) {
  if (!(mu > 0) || !(u > -1) || !(t > 0)) throw domain_error("the derivative identity needs mu > 0, u > -1, t > 0");
  auto F = [&](long double s) { return std::pow(s, 2 * (long double)mu) * detail::s_mu_ld(mu, u, s).value; };
  auto D = [&](long double h) { return (F(t + h) - F(t - h)) / (2 * h); };
  const long double h = 1e-5L * t;
  identity_value v;
  v.lhs = double((4 * D(h / 2) - D(h)) / 3);
  hankel_options o;
  o.envelope = [&](double x) { return std::exp(-(1 + u) * x) * (x + 2) * std::pow(x, 2 * mu) * bessel_j0_value(mu - 0.5); };
  v.rhs = -hankel_constant(mu) * std::pow(t, 2 * mu - 1) * hankel_transform([&](double x) { return h_u_prime(u, x); }, 2 * mu + 1, t, o);
  return v;
}

// the derivative identity over a grid, agreement to max(1e-6, 1e-4 |rhs|)
inline verification_report derivative_identity_check(double mu, double u, const grid_spec& ts) {
  ts.validate();
  verification_report r;
  r.check_name = "derivative_identity";
  for (double t : ts.points) {
    auto v = identity_derivative(mu, u, t);
    r.expect_less({{"mu", mu}, {"u", u}}, t, v.difference(), 0, std::max(1e-6, 1e-4 * std::abs(v.rhs)), 0, false);
  }
  return r;
}

namespace detail {

// int_t^inf f(y) y |y^2-t^2|^{nu-mu-1} dy, split at t+1 for the endpoint singularity
template <typename F>
double transfer_integral(const F& f, double nu, double mu, double t) {
  const double e = nu - mu - 1;
  auto w = [&](double y) { return f(y) * y * std::pow(std::abs(y * y - t * t), e); };
  const double a = std::max(t, 0.0);
  auto head = quad::tanh_sinh(w, a, a + 1, 1e-13);
  auto tail = quad::half_line(w, a + 1, 1e-13);
  return head.value + tail.value;
}

}  // namespace detail

// int_t^inf (1/(nu(p^2+y^2)^nu) - S_nu(y,u)) y |y^2-t^2|^{nu-mu-1} dy
//   = B(nu-mu, mu+1)/2 (1/(mu(p^2+t^2)^mu) - S_mu(t,u))
inline identity_value identity_transfer(double nu, double mu, double p, double u, double t) {
  if (!(nu > mu && mu > 0) || !(t >= 0)) throw domain_error("the transfer identity needs nu > mu > 0 and t >= 0");
  identity_value v;
  v.lhs = detail::transfer_integral([&](double y) { return double(detail::leading_minus_S(nu, p * p, u, y)); }, nu, mu, t);
  v.rhs = boost::math::beta(nu - mu, mu + 1) / 2 * double(detail::leading_minus_S(mu, p * p, u, t));
  return v;
}

// the same transfer for H_{nu,b}: int_t^inf H_{nu,b}(y,u) y |y^2-t^2|^{nu-mu-1} dy = B(nu-mu, mu+1)/2 H_{mu,b}(t,u)
inline identity_value identity_transfer_H(double nu, double mu, double b, double u, double t) {
  if (!(nu > mu && mu > 0) || !(t >= 0)) throw domain_error("the transfer identity needs nu > mu > 0 and t >= 0");
  identity_value v;
  v.lhs = detail::transfer_integral([&](double y) { return double(detail::H_nub_fast(nu, b, u, y)); }, nu, mu, t);
  v.rhs = boost::math::beta(nu - mu, mu + 1) / 2 * double(detail::H_nub_fast(mu, b, u, t));
  return v;
}

}  // namespace mathieu
