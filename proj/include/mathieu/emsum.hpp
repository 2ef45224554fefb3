#pragma once

// Euler-Maclaurin sums with offset u and their alternating (Boole)
// counterparts, with explicit remainder bounds built from total variation
// of the n-th derivative and sup norms of Bernoulli/Euler splines.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "accumulate.hpp"
#include "asymptotic.hpp"
#include "error.hpp"
#include "jet.hpp"
#include "polyfun.hpp"
#include "quadrature.hpp"

namespace mathieu {

class smooth_function {
 public:
  using jet_fn = std::function<jet<double>(const jet<double>&)>;
  using value_fn = std::function<double(double)>;
  using tail_fn = std::function<double(double)>;
  using variation_fn = std::function<double(int, double, double)>;
  using deriv_override_fn = std::function<std::optional<double>(int, double)>;

  smooth_function() = default;

  // f must accept both double and jet<double>
  template <typename F>
  explicit smooth_function(F f, int max_order = poly_max_order)
      : jf_([f](const jet<double>& x) { return f(x); }),
        vf_([f](double x) { return double(f(x)); }),
        max_order_(max_order) {}

  smooth_function& with_tail(tail_fn t) {
    tail_ = std::move(t);
    return *this;
  }
  smooth_function& with_variation(variation_fn v) {
    variation_ = std::move(v);
    return *this;
  }
  smooth_function& with_domain_left(double q) {
    domain_left_ = q;
    return *this;
  }
  // length scale of the features; sets grid spacing of the default variation scan
  smooth_function& with_scale(double s) {
    scale_ = s;
    return *this;
  }
  // values for points where jets are not defined (x^s at 0 with s non-integer)
  smooth_function& with_deriv_override(deriv_override_fn d) {
    override_ = std::move(d);
    return *this;
  }

  double eval(double x) const { return vf_(x); }

  double deriv(int k, double x) const {
    check(k);
    if (override_)
      if (auto v = override_(k, x)) return *v;
    return jf_(jet<double>::variable(x, k)).deriv(k);
  }

  // F^(j)(x), j = 0..kmax
  std::vector<double> derivs(int kmax, double x) const {
    check(kmax);
    std::vector<double> r(std::size_t(kmax) + 1);
    bool need_jet = true;
    if (override_) {
      need_jet = false;
      for (int j = 0; j <= kmax; ++j) {
        auto v = override_(j, x);
        if (!v) {
          need_jet = true;
          break;
        }
        r[std::size_t(j)] = *v;
      }
    }
    if (need_jet) {
      auto j = jf_(jet<double>::variable(x, kmax));
      for (int i = 0; i <= kmax; ++i) r[std::size_t(i)] = j.deriv(i);
    }
    return r;
  }

  jet<double> taylor(double x, int order) const {
    check(order);
    return jf_(jet<double>::variable(x, order));
  }

  double tail_integral(double t) const {
    if (tail_) return tail_(t);
    return quad::half_line(vf_, t, 1e-13).value;
  }

  double variation(int k, double a, double b) const {
    if (!(b >= a)) throw domain_error("variation needs a <= b");
    if (a == b) return 0.0;
    if (variation_) return variation_(k, a, b);
    return scan_variation(k, a, b);
  }

  double domain_left() const { return domain_left_; }
  int max_order() const { return max_order_; }
  double scale() const { return scale_; }

 private:
  void check(int k) const {
    if (k < 0 || k > max_order_) throw order_error("derivative order exceeds the function's max order");
  }

  // F^(k) and F^(k+1) at x, or nullopt when jets are undefined there
  std::optional<std::pair<double, double>> dd(int k, double x) const {
    try {
      auto j = jf_(jet<double>::variable(x, k + 1));
      return std::make_pair(j.deriv(k), j.deriv(k + 1));
    } catch (const order_error&) {
      return std::nullopt;
    } catch (const domain_error&) {
      return std::nullopt;
    }
  }

  // total variation of F^(k) on [a,b] by splitting at zeros of F^(k+1)
  double scan_variation(int k, double a, double b) const {
    std::vector<double> xs;
    const bool inf = std::isinf(b);
    const double h = scale_ / 128;
    if (!inf) {
      const int m = 4096;
      for (int i = 0; i <= m; ++i) xs.push_back(a + (b - a) * i / m);
    } else {
      const double mid = std::max(a + 16 * scale_, 16 * scale_);
      for (double x = a; x < mid; x += h) xs.push_back(x);
      const double horizon = 1e7 * scale_ + std::abs(a);
      for (double x = mid; x < horizon; x *= 1.01) xs.push_back(x);
      xs.push_back(horizon);
    }
    compensated_sum<double> v;
    double start = xs.front();
    std::optional<std::pair<double, double>> prev = dd(k, start);
    if (!prev) {
      // jet undefined at the left edge: value from the override, slope from just inside
      double inner = start + 1e-12 * scale_;
      auto in = dd(k, inner);
      if (!in) throw order_error("variation scan cannot evaluate the derivative");
      v += std::abs(in->first - deriv(k, start));
      prev = in;
      start = inner;
    }
    double px = start;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      double x = xs[i];
      if (x <= px) continue;
      auto cur = dd(k, x);
      if (!cur) continue;
      if ((prev->second > 0 && cur->second < 0) || (prev->second < 0 && cur->second > 0)) {
        double lo = px, hi = x, slo = prev->second;
        for (int it = 0; it < 60; ++it) {
          double m = 0.5 * (lo + hi);
          auto dm = dd(k, m);
          if (!dm) break;
          if ((dm->second > 0) == (slo > 0)) {
            lo = m;
            slo = dm->second;
          } else {
            hi = m;
          }
        }
        auto ext = dd(k, 0.5 * (lo + hi));
        double fe = ext ? ext->first : prev->first;
        v += std::abs(fe - prev->first);
        v += std::abs(cur->first - fe);
      } else {
        v += std::abs(cur->first - prev->first);
      }
      prev = cur;
      px = x;
    }
    if (inf) v += std::abs(prev->first);  // F^(k)(+inf) = 0 by hypothesis
    double r = v.value();
    return r * (1 + 1e-9) + std::numeric_limits<double>::denorm_min();
  }

  jet_fn jf_;
  value_fn vf_;
  int max_order_ = poly_max_order;
  tail_fn tail_;
  variation_fn variation_;
  deriv_override_fn override_;
  double domain_left_ = 0.0;
  double scale_ = 1.0;
};

struct em_result {
  double sum_estimate = 0;
  double integral_term = 0;
  std::vector<double> boundary_terms;  // k = 0..n
  double remainder_bound = 0;  // includes rounding_bound
  double rounding_bound = 0;   // share of the bound covering floating-point accumulation
  int n_used = 0;
  double epsilon = 0;
  double u = 0;
};

struct identity_sides {
  double lhs = 0;
  double rhs = 0;
  double quad_error = 0;  // estimated quadrature error in rhs
};

namespace detail {

inline double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline void check_engine_args(double eps, int n, int extra) {
  if (!(eps > 0)) throw domain_error("epsilon must be positive");
  if (n < 0 || n + extra > poly_max_order) throw order_error("expansion order outside the cached polynomial range");
}

// integral over [a,b] where the integrand is smooth inside panels of width w starting at a
template <typename G>
quad::result panel_integral(const G& g, double a, double b, double w, double tol) {
  quad::result acc;
  compensated_sum<double> s;
  int m = std::max(1, int(std::ceil((b - a) / w - 1e-9)));
  for (int j = 0; j < m; ++j) {
    double l = a + j * w, r = j + 1 == m ? b : a + (j + 1) * w;
    auto q = quad::robust(g, l, r, tol / m);
    s += q.value;
    acc.error += q.error;
  }
  acc.value = s.value();
  return acc;
}

}  // namespace detail

// Both sides of the finite Euler-Maclaurin identity with offset u.
// Stieltjes integrals are taken against F^(n+1) dt with panels split at t = j eps.
inline identity_sides em_finite_identity(const smooth_function& F, int p, double eps, double u, int n, double tol = 1e-13) {
  detail::check_engine_args(eps, n, 1);
  if (p < 1) throw domain_error("p must be a positive integer");
  if (!(u > -p)) throw domain_error("offset u must exceed -p");
  if (n + 1 > F.max_order()) throw order_error("F lacks the derivative order needed for the remainder");
  if (eps * std::min(u, 0.0) < F.domain_left()) throw domain_error("F is not defined on the required interval");

  identity_sides r;
  compensated_sum<double> lhs;
  for (int k = 1; k <= p; ++k) lhs += F.eval(eps * k + eps * u);
  r.lhs = lhs.value();

  compensated_sum<double> rhs;
  const double top = eps * (p + u);
  auto integ = detail::panel_integral([&](double x) { return F.eval(x); }, 0.0, top, eps, tol);
  rhs += integ.value / eps;
  r.quad_error += integ.error / eps;

  const auto d_top = F.derivs(n, top);
  const auto d_0 = F.derivs(n, 0.0);
  for (int k = 0; k <= n; ++k) {
    double c = (k % 2 == 0 ? -1.0 : 1.0) * std::pow(eps, k) / detail::factorial(k + 1);
    rhs += c * (bernoulli_poly(k + 1, 0.0) * d_top[k] - bernoulli_poly(k + 1, -u) * d_0[k]);
  }

  const int m = n + 1;
  auto i1 = detail::panel_integral(
      [&](double t) {
        double s = t / eps;
        return spline_eval_fast<double>({poly_family::bernoulli, m}, s) * F.deriv(m, t + eps * u);
      },
      0.0, eps * p, eps, tol);
  double i2 = 0, i2err = 0;
  if (u != 0) {
    auto q = quad::robust([&](double s) { return bernoulli_poly_fast<double>(m, -u + u * s) * eps * u * F.deriv(m, s * eps * u); },
                          0.0, 1.0, tol);
    i2 = q.value;
    i2err = q.error;
  }
  double c = (n % 2 == 0 ? 1.0 : -1.0) * std::pow(eps, n) / detail::factorial(n + 1);
  rhs += c * i1.value;
  rhs += c * i2;
  r.quad_error += std::abs(c) * (i1.error + i2err);
  r.rhs = rhs.value();
  return r;
}

// Both sides of the finite alternating identity over k = 1..2p.
inline identity_sides boole_finite_identity(const smooth_function& G, int p, double eps, double u, int n, double tol = 1e-13) {
  detail::check_engine_args(eps, n, 1);
  if (p < 1) throw domain_error("p must be a positive integer");
  if (!(u > -2 * p)) throw domain_error("offset u must exceed -2p");
  if (n + 1 > G.max_order()) throw order_error("G lacks the derivative order needed for the remainder");
  if (eps * std::min(u, 0.0) < G.domain_left()) throw domain_error("G is not defined on the required interval");

  identity_sides r;
  compensated_sum<double> lhs;
  for (int k = 1; k <= 2 * p; ++k) lhs += (k % 2 ? 1.0 : -1.0) * G.eval(eps * k + eps * u);
  r.lhs = lhs.value();

  compensated_sum<double> rhs;
  const double top = 2 * eps * p + eps * u;
  const auto d_top = G.derivs(n, top);
  const auto d_0 = G.derivs(n, 0.0);
  for (int k = 0; k <= n; ++k) {
    double c = (k % 2 == 0 ? -1.0 : 1.0) * std::pow(eps, k) / (2 * detail::factorial(k));
    rhs += c * (euler_poly(k, 0.0) * d_top[k] - euler_poly(k, -u) * d_0[k]);
  }
  const int m = n + 1;
  auto i1 = detail::panel_integral(
      [&](double t) {
        double s = t / eps;
        return spline_eval_fast<double>({poly_family::euler, n}, s) * G.deriv(m, t + eps * u);
      },
      0.0, 2 * eps * p, eps, tol);
  double i2 = 0, i2err = 0;
  if (u != 0) {
    auto q = quad::robust([&](double s) { return euler_poly_fast<double>(n, -u + u * s) * eps * u * G.deriv(m, s * eps * u); }, 0.0,
                          1.0, tol);
    i2 = q.value;
    i2err = q.error;
  }
  double c = (n % 2 == 0 ? 1.0 : -1.0) * std::pow(eps, n) / (2 * detail::factorial(n));
  rhs += c * i1.value;
  rhs += c * i2;
  r.quad_error += std::abs(c) * (i1.error + i2err);
  r.rhs = rhs.value();
  return r;
}

namespace detail {

inline void check_offset(const smooth_function& F, double eps, double u) {
  if (u < 0 && !(eps * u > F.domain_left()))
    throw precondition_error("u < 0 requires eps < q/u with q the left edge of the domain");
}

// the second variation term of the remainder: sup of P_m between -u and 0 times V of F^(n) between 0 and eps u
inline double offset_remainder(const smooth_function& F, poly_family fam, int m, int n, double eps, double u) {
  if (u == 0) return 0.0;
  double lo = std::min(-u, 0.0), hi = std::max(-u, 0.0);
  double sup = poly_sup(m, fam, lo, hi);
  double v = F.variation(n, std::min(0.0, eps * u), std::max(0.0, eps * u));
  return sup * v;
}

}  // namespace detail

// Sum_{k>=1} F(eps k + eps u) with remainder bound.
// Note: with F = g(x) = x^gamma (x^alpha+1)^{-mu-1} and eps = 1/t the sum equals
// t^delta S(t,u,...)/2, since each series term is 2 t^{-delta} g((k+u)/t).
inline em_result em_sum(const smooth_function& F, double eps, double u, int n) {
  detail::check_engine_args(eps, n, 1);
  detail::check_offset(F, eps, u);
  em_result r;
  r.n_used = n;
  r.epsilon = eps;
  r.u = u;
  r.integral_term = F.tail_integral(0.0) / eps;
  const auto d = F.derivs(n, 0.0);
  compensated_sum<double> s;
  s += r.integral_term;
  for (int k = 0; k <= n; ++k) {
    double c = (k % 2 ? -1.0 : 1.0) * std::pow(eps, k) / detail::factorial(k + 1) * bernoulli_poly(k + 1, -u);
    r.boundary_terms.push_back(c * d[k]);
  }
  for (int k = n; k >= 0; --k) s += r.boundary_terms[k];
  r.sum_estimate = s.value();
  double lead = spline_sup({poly_family::bernoulli, n + 1}) * F.variation(n, eps * u, std::numeric_limits<double>::infinity());
  double off = detail::offset_remainder(F, poly_family::bernoulli, n + 1, n, eps, u);
  r.remainder_bound = std::pow(eps, n) / detail::factorial(n + 1) * (lead + off);
  r.rounding_bound = 8 * std::numeric_limits<double>::epsilon() * s.abs_sum;
  r.remainder_bound += r.rounding_bound;
  return r;
}

// Sum_{k>=1} (-1)^{k-1} G(eps k + eps u) with remainder bound.
inline em_result boole_sum(const smooth_function& G, double eps, double u, int n) {
  detail::check_engine_args(eps, n, 0);
  detail::check_offset(G, eps, u);
  em_result r;
  r.n_used = n;
  r.epsilon = eps;
  r.u = u;
  const auto d = G.derivs(n, 0.0);
  compensated_sum<double> s;
  for (int k = 0; k <= n; ++k) {
    double c = (k % 2 ? -1.0 : 1.0) * std::pow(eps, k) / (2 * detail::factorial(k)) * euler_poly(k, -u);
    r.boundary_terms.push_back(c * d[k]);
  }
  for (int k = n; k >= 0; --k) s += r.boundary_terms[k];
  r.sum_estimate = s.value();
  double lead = spline_sup({poly_family::euler, n}) * G.variation(n, eps * u, std::numeric_limits<double>::infinity());
  double off = detail::offset_remainder(G, poly_family::euler, n, n, eps, u);
  r.remainder_bound = std::pow(eps, n) / (2 * detail::factorial(n)) * (lead + off);
  r.rounding_bound = 8 * std::numeric_limits<double>::epsilon() * s.abs_sum;
  r.remainder_bound += r.rounding_bound;
  return r;
}

// coefficients of the small-eps expansion of Sum F(eps k + eps u):
// leading (integral of F) * eps^-1, then c_k eps^k
inline asymptotic_series em_asym_coeffs(const smooth_function& F, double u, int k_max) {
  if (k_max < 0 || k_max + 1 > poly_max_order) throw order_error("k_max outside the cached polynomial range");
  asymptotic_series s;
  s.variable = "eps";
  s.leading = asymptotic_series::term{-1.0L, (long double)F.tail_integral(0.0)};
  const auto d = F.derivs(k_max, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    long double b = bernoulli_poly<long double>(k + 1, -u);
    long double c = (k % 2 ? -1.0L : 1.0L) / (long double)detail::factorial(k + 1) * b * (long double)d[k];
    s.stream.push_back({(long double)k, c});
  }
  return s;
}

inline asymptotic_series boole_asym_coeffs(const smooth_function& G, double u, int k_max) {
  if (k_max < 0 || k_max > poly_max_order) throw order_error("k_max outside the cached polynomial range");
  asymptotic_series s;
  s.variable = "eps";
  const auto d = G.derivs(k_max, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    long double e = euler_poly<long double>(k, -u);
    long double c = (k % 2 ? -1.0L : 1.0L) / (2.0L * (long double)detail::factorial(k)) * e * (long double)d[k];
    s.stream.push_back({(long double)k, c});
  }
  return s;
}

}  // namespace mathieu
