#pragma once

// Generalized Mathieu series
//   S(t,u,gamma,alpha,mu)  = sum_{k>=1} 2 (k+u)^gamma / ((k+u)^alpha + t^alpha)^{mu+1}
//   S~(t,u,gamma,alpha,mu) = same with the factor (-1)^{k-1}
// evaluated with two-sided error brackets, plus the kernel
// g(x) = x^gamma (x^alpha+1)^{-mu-1} and its asymptotic expansions.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "accumulate.hpp"
#include "asymptotic.hpp"
#include "emsum.hpp"
#include "error.hpp"
#include "jet.hpp"
#include "polyfun.hpp"

namespace mathieu {

enum class series_kind { plain, alternating };

namespace detail {

inline bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

// x^e with exact repeated multiplication for small integer exponents
template <typename Real>
Real power(Real x, double e) {
  if (e == 1) return x;
  if (e == 0) return Real(1);
  if (is_integer(e) && std::abs(e) <= 16) {
    long n = std::lround(std::abs(e));
    Real r = 1, b = x;
    while (n) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return e < 0 ? Real(1) / r : r;
  }
  using std::pow;
  return pow(x, Real(e));
}

}  // namespace detail

struct mathieu_params {
  double gamma = 1;
  double alpha = 2;
  double mu = 1;
  double u = 0;
  // S_mu form: gamma = 1, alpha = 2, u any real, the k = -u term dropped
  bool any_u = false;

  double delta() const { return alpha * (mu + 1) - gamma; }

  // (gamma, alpha) in Z+ x N: g is smooth on (-1, inf)
  bool smooth_regime() const { return detail::is_integer(gamma) && gamma >= 0 && detail::is_integer(alpha) && alpha >= 1; }

  void validate(series_kind kind) const {
    if (!std::isfinite(gamma) || !(gamma >= 0)) throw domain_error("gamma must be nonnegative");
    if (!std::isfinite(alpha) || !(alpha > 0)) throw domain_error("alpha must be positive");
    if (!std::isfinite(mu) || !std::isfinite(u)) throw domain_error("parameters must be finite");
    if (kind == series_kind::plain && !(delta() > 1)) throw domain_error("delta must exceed 1");
    if (kind == series_kind::alternating && !(delta() > 0)) throw domain_error("delta must exceed 0");
    if (any_u) {
      if (gamma != 1 || alpha != 2) throw domain_error("the real-u form needs gamma = 1 and alpha = 2");
      if (!(mu > 0)) throw domain_error("mu must be positive");
    } else if (!(u > -1)) {
      throw domain_error("u must exceed -1");
    }
  }

  static mathieu_params make(double gamma, double alpha, double mu, double u, series_kind kind = series_kind::plain) {
    mathieu_params p{gamma, alpha, mu, u, false};
    p.validate(kind);
    return p;
  }

  // S_mu(t,u) = S(t,u,1,2,mu), u real
  static mathieu_params s_mu(double mu, double u) {
    mathieu_params p{1, 2, mu, u, true};
    p.validate(series_kind::plain);
    return p;
  }
};

enum class eval_method { direct, euler_maclaurin, asymptotic, closed_form };

inline std::string to_string(eval_method m) {
  switch (m) {
    case eval_method::direct: return "direct";
    case eval_method::euler_maclaurin: return "euler_maclaurin";
    case eval_method::asymptotic: return "asymptotic";
    case eval_method::closed_form: return "closed_form";
  }
  return "unknown";
}

// value with true value in [value - err_lo, value + err_hi]; rigorous is false
// when the bracket is the heuristic next-term proxy of an asymptotic series
template <typename Real = double>
struct eval_result {
  Real value = 0;
  Real err_lo = 0;
  Real err_hi = 0;
  eval_method method = eval_method::direct;
  long long terms_used = 0;
  bool rigorous = true;

  Real lower() const { return value - err_lo; }
  Real upper() const { return value + err_hi; }
};

// ---------------------------------------------------------------------------
// the kernel g

struct smoothness_profile {
  static constexpr int infinite = std::numeric_limits<int>::max();
  int r = 0;  // infinite when g is C^inf on [0, inf)
  std::vector<std::pair<int, double>> initial_derivs;  // (p, g^(p)(0)), p <= min(r, cap)
  bool is_infinite() const { return r == infinite; }
};

template <typename Real = double>
Real g_eval(const mathieu_params& p, Real x) {
  if (x < 0 && !(p.smooth_regime() && x > -1)) throw domain_error("g needs x >= 0 (x > -1 for integer gamma and natural alpha)");
  return detail::power(x, p.gamma) * detail::power(detail::power(x, p.alpha) + Real(1), -(p.mu + 1));
}

inline smoothness_profile g_smoothness(const mathieu_params& p, int cap = 12) {
  smoothness_profile s;
  const bool gi = detail::is_integer(p.gamma);
  if (p.smooth_regime()) {
    s.r = smoothness_profile::infinite;
    // g^(p)(0) = p! c_k at p = gamma + k alpha, c_k = (-1)^k Gamma(mu+k+1)/(Gamma(mu+1) k!)
    for (int q = 0; q <= cap; ++q) {
      double v = 0;
      double rest = q - p.gamma;
      if (rest >= 0 && std::fmod(rest, p.alpha) == 0) {
        int k = int(std::lround(rest / p.alpha));
        double c = 1;
        for (int j = 1; j <= k; ++j) c *= -(p.mu + j) / j;
        v = c * std::tgamma(q + 1.0);
      }
      s.initial_derivs.emplace_back(q, v);
    }
    return s;
  }
  s.r = gi ? int(p.gamma) + int(std::floor(p.alpha)) : int(std::floor(p.gamma));
  for (int q = 0; q <= std::min(s.r, cap); ++q) s.initial_derivs.emplace_back(q, gi && q == int(p.gamma) ? std::tgamma(q + 1.0) : 0.0);
  return s;
}

// Taylor jet of g at x; at x = 0 outside the smooth regime only orders <= r exist
inline jet<double> g_jet(const mathieu_params& p, double x, int order) {
  if (x == 0 && !p.smooth_regime()) {
    auto prof = g_smoothness(p, order);
    if (order > prof.r) throw order_error("derivative order exceeds the smoothness of g at 0");
    jet<double> j(order, 0.0);
    for (auto [q, v] : prof.initial_derivs) j.coeff(q) = v / std::tgamma(q + 1.0);
    return j;
  }
  if (x < 0 && !(p.smooth_regime() && x > -1)) throw domain_error("g needs x >= 0 (x > -1 for integer gamma and natural alpha)");
  auto X = jet<double>::variable(x, order);
  return pow(X, p.gamma) * pow(pow(X, p.alpha) + 1.0, -(p.mu + 1));
}

// V_0^inf(g) = 1 for gamma = 0, else 2 g(x0) with x0 = (gamma/delta)^{1/alpha}
inline double g_total_variation(const mathieu_params& p) {
  if (!(p.delta() > 0)) throw domain_error("delta must exceed 0");
  if (p.gamma == 0) return 1.0;
  double r = p.gamma / p.delta();
  return 2 * std::pow(r, p.gamma / p.alpha) * std::pow(r + 1, -p.mu - 1);
}

// F(t) = int_t^inf g = (1/alpha) B(a,b) I_s(b,a), a = (gamma+1)/alpha,
// b = (delta-1)/alpha, s = 1/(t^alpha+1)
template <typename Real = double>
Real tail_integral(const mathieu_params& p, Real t) {
  if (!(t >= 0)) throw domain_error("tail integral needs t >= 0");
  if (!(p.delta() > 1)) throw divergence_error("tail integral diverges: g ~ x^-delta with delta <= 1");
  using std::pow;
  if (p.gamma == 1 && p.alpha == 2) return Real(1) / (Real(2 * p.mu) * pow(t * t + 1, Real(p.mu)));
  const Real a = Real(p.gamma + 1) / Real(p.alpha), b = Real(p.delta() - 1) / Real(p.alpha);
  const Real ta = pow(t, Real(p.alpha));
  Real frac;
  if (ta < 1) {
    const Real w = ta / (1 + ta);
    frac = boost::math::ibetac(a, b, w);
  } else {
    const Real s = 1 / (1 + ta);
    frac = boost::math::ibeta(b, a, s);
  }
  return boost::math::beta(a, b) * frac / Real(p.alpha);
}

// g packaged for the summation engines: exact jets away from 0, the
// smoothness profile at 0, closed-form tail
inline smooth_function g_function(const mathieu_params& p) {
  const double ga = p.gamma, al = p.alpha, m = p.mu + 1;
  smooth_function f([ga, al, m](auto x) {
    using std::pow;
    return pow(x, ga) * pow(pow(x, al) + 1.0, -m);
  });
  if (p.smooth_regime()) {
    f.with_domain_left(-1.0);
  } else {
    auto prof = g_smoothness(p, poly_max_order);
    f.with_deriv_override([prof](int k, double x) -> std::optional<double> {
      if (x != 0 || k > prof.r || k >= int(prof.initial_derivs.size())) return std::nullopt;
      return prof.initial_derivs[std::size_t(k)].second;
    });
  }
  if (p.delta() > 1) f.with_tail([p](double t) { return tail_integral(p, t); });
  return f;
}

// ---------------------------------------------------------------------------
// direct summation

namespace detail {

inline long long max_terms() {
  static const long long cap = [] {
    if (const char* s = std::getenv("MATHIEU_MAX_TERMS")) {
      char* end = nullptr;
      double v = std::strtod(s, &end);
      if (end != s && v >= 1) return (long long)v;
    }
    return 20'000'000LL;
  }();
  return cap;
}

// largest y with g''(y) = 0; g is convex beyond it. With z = y^alpha,
// g'' y^{2-gamma} (1+z)^{mu+3} = (delta^2+delta) z^2 - (2 gamma delta + 2 gamma + m alpha (alpha-1)) z + gamma(gamma-1)
inline double convexity_threshold(const mathieu_params& p) {
  const double d = p.delta(), m = p.mu + 1, a = p.alpha, ga = p.gamma;
  const double A = d * d + d, B = 2 * ga * d + 2 * ga + m * a * (a - 1), C = ga * (ga - 1);
  const double disc = B * B - 4 * A * C;
  if (disc < 0) return 0.0;
  const double z = (B + std::sqrt(disc)) / (2 * A);
  if (!(z > 0)) return 0.0;
  return std::pow(z, 1 / a) * (1 + 1e-9) + 1e-12;
}

// one series term as a function of y = k + u
template <typename Real>
struct term_fn {
  const mathieu_params& p;
  Real ta;  // t^alpha
  Real operator()(Real y) const {
    return Real(2) * detail::power(y, p.gamma) * detail::power(detail::power(y, p.alpha) + ta, -(p.mu + 1));
  }
};

// int_Y^inf of the term as a function of y, with a relative error estimate
template <typename Real>
std::pair<Real, Real> term_integral(const mathieu_params& p, Real t, Real Y) {
  using std::pow;
  const Real eps = std::numeric_limits<Real>::epsilon();
  if (p.gamma == 1 && p.alpha == 2) {
    return {Real(1) / (Real(p.mu) * pow(Y * Y + t * t, Real(p.mu))), 16 * eps};
  }
  const Real d = Real(p.delta());
  if (t == 0) return {Real(2) * pow(Y, 1 - d) / (d - 1), 16 * eps};
  return {Real(2) * pow(t, 1 - d) * tail_integral<Real>(p, Y / t), 256 * eps};
}

}  // namespace detail

namespace detail {

// sum_{k>N} h(k) = sum_{j>=1} G(j), G(x) = h(N + x), by Euler-Maclaurin with
// eps = 1. N grows until the pure remainder is below tol/2; the estimate is
// recomputed with a Real jet. Returns {N, estimate, error}.
template <typename Real>
std::tuple<long long, Real, Real> em_tail(const mathieu_params& p, Real t, Real tol, int order) {
  using std::abs;
  using std::pow;
  const Real u = Real(p.u);
  const double ga = p.gamma, al = p.alpha, m = p.mu + 1;
  const long long cap = max_terms();
  long long N = std::max<long long>(16, (long long)std::ceil(2 * double(t)) + 16);
  if (p.u < 0) N += (long long)std::ceil(-p.u);
  em_result tail;
  for (;;) {
    if (N > cap) throw tolerance_error("direct summation would exceed the term cap (MATHIEU_MAX_TERMS)");
    const double shift = double(N) + p.u, td = double(t), ta = std::pow(td, p.alpha);
    smooth_function G([=](auto x) {
      using std::pow;
      auto y = x + shift;
      return 2.0 * pow(y, ga) * pow(pow(y, al) + ta, -m);
    });
    G.with_domain_left(-shift).with_scale(shift + td).with_tail([&p, shift, td](double x) {
      return term_integral<double>(p, td, shift + x).first;
    });
    tail = em_sum(G, 1.0, 0.0, order);
    if (tail.remainder_bound - tail.rounding_bound <= double(tol) / 2) break;
    N *= 4;
  }
  auto y = jet<Real>::variable(Real(N) + u, order);
  auto gj = Real(2) * pow(y, Real(ga)) * pow(pow(y, Real(al)) + pow(t, Real(al)), Real(-m));
  auto [integral, ierr] = term_integral<Real>(p, t, Real(N) + u);
  compensated_sum<Real> s;
  for (int k = order; k >= 0; --k) s += (k % 2 ? Real(-1) : Real(1)) * bernoulli_poly<Real>(k + 1, 0.0) / (k + 1) * gj.coeff(k);
  s += integral;
  const Real err = Real(tail.remainder_bound - tail.rounding_bound) + ierr * abs(integral) + s.rounding_bound(Real(64));
  return {N, s.value(), err};
}

}  // namespace detail

// Fast non-rigorous value for searches: direct head up to N = 4t + 64 and an
// Euler-Maclaurin tail of the given order. The reported error is the size of
// the last correction, flagged rigorous = false.
template <typename Real = double>
eval_result<Real> estimate_S(const mathieu_params& p, Real t, int order = 12) {
  using std::abs;
  using std::pow;
  p.validate(series_kind::plain);
  if (!(t >= 0) || !std::isfinite(static_cast<double>(t))) throw domain_error("t must be nonnegative");
  const Real u = Real(p.u);
  const detail::term_fn<Real> h{p, pow(t, Real(p.alpha))};
  long long N = 64 + (long long)std::ceil(4 * double(t));
  if (p.u < 0) N += (long long)std::ceil(-p.u);
  compensated_sum<Real> head;
  for (long long k = N; k >= 1; --k) {
    Real y = Real(k) + u;
    if (y == 0) continue;
    head += h(y);
  }
  auto y = jet<Real>::variable(Real(N) + u, order);
  auto gj = Real(2) * pow(y, Real(p.gamma)) * pow(pow(y, Real(p.alpha)) + pow(t, Real(p.alpha)), Real(-(p.mu + 1)));
  auto [integral, ierr] = detail::term_integral<Real>(p, t, Real(N) + u);
  compensated_sum<Real> tail;
  Real last = 0;
  for (int k = order; k >= 0; --k) {
    Real c = (k % 2 ? Real(-1) : Real(1)) * bernoulli_poly<Real>(k + 1, 0.0) / (k + 1) * gj.coeff(k);
    if (k >= order - 1) last += abs(c);
    tail += c;
  }
  tail += integral;
  eval_result<Real> r;
  r.value = head.value() + tail.value();
  r.err_lo = r.err_hi = last + ierr * abs(integral) + head.rounding_bound() + tail.rounding_bound(Real(64));
  r.method = eval_method::direct;
  r.terms_used = N;
  r.rigorous = false;
  return r;
}

// how eval_S closes the sum beyond the direct head
enum class tail_rule { hermite_hadamard, euler_maclaurin };

// Direct summation with a rigorous tail. The default Hermite-Hadamard rule
// uses convexity of the terms in k (past the convexity threshold of g),
//   int_{N+1}^inf h + h(N+1)/2 <= sum_{k>N} h(k) <= int_{N+1/2}^inf h,
// with N the smallest index that brings the bracket width below tol. The
// Euler-Maclaurin rule needs only O(t) terms and suits tight tolerances.
template <typename Real = double>
eval_result<Real> eval_S(const mathieu_params& p, Real t, Real tol = Real(1e-13), tail_rule rule = tail_rule::hermite_hadamard,
                         int order = 8) {
  using std::abs;
  using std::pow;
  p.validate(series_kind::plain);
  if (!(t >= 0) || !std::isfinite(static_cast<double>(t))) throw domain_error("t must be nonnegative");
  if (!(tol > 0)) throw domain_error("tolerance must be positive");
  const Real u = Real(p.u);
  const detail::term_fn<Real> h{p, pow(t, Real(p.alpha))};
  if (rule == tail_rule::euler_maclaurin) {
    auto [N, tv, terr] = detail::em_tail<Real>(p, t, tol, order);
    compensated_sum<Real> head;
    for (long long k = N; k >= 1; --k) {
      Real y = Real(k) + u;
      if (y == 0) continue;
      head += h(y);
    }
    eval_result<Real> r;
    r.value = head.value() + tv;
    r.err_lo = r.err_hi = terr + head.rounding_bound() + 4 * std::numeric_limits<Real>::epsilon() * abs(r.value);
    r.method = eval_method::direct;
    r.terms_used = N;
    return r;
  }
  const Real yc = Real(detail::convexity_threshold(p)) * t;

  long long n_min = std::max<long long>(1, (long long)std::ceil(static_cast<double>(yc - u + Real(0.5))));
  while (Real(n_min) + u - Real(0.5) <= 0) ++n_min;

  struct bracket {
    Real lo, hi, ferr;
  };
  auto tail = [&](long long N) {
    auto [i_hi, e_hi] = detail::term_integral<Real>(p, t, Real(N) + Real(0.5) + u);
    auto [i_lo, e_lo] = detail::term_integral<Real>(p, t, Real(N) + 1 + u);
    bracket b{i_lo + h(Real(N) + 1 + u) / 2, i_hi, e_hi * abs(i_hi) + e_lo * abs(i_lo)};
    return b;
  };
  auto width = [&](long long N) {
    auto b = tail(N);
    return (b.hi - b.lo) + 2 * b.ferr;
  };

  const long long cap = detail::max_terms();
  long long N = n_min;
  if (width(N) > tol) {
    long long lo = N, hi = N;
    while (width(hi) > tol) {
      if (hi > cap) throw tolerance_error("direct summation would exceed the term cap (MATHIEU_MAX_TERMS)");
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      long long mid = lo + (hi - lo) / 2;
      (width(mid) > tol ? lo : hi) = mid;
    }
    N = hi;
  }
  if (N > cap) throw tolerance_error("direct summation would exceed the term cap (MATHIEU_MAX_TERMS)");

  compensated_sum<Real> head;
  for (long long k = N; k >= 1; --k) {
    Real y = Real(k) + u;
    if (y == 0) continue;  // the dropped k = -u term of the real-u form
    head += h(y);
  }
  auto b = tail(N);
  eval_result<Real> r;
  const Real mid = (b.lo + b.hi) / 2;
  r.value = head.value() + mid;
  const Real half = (b.hi - b.lo) / 2 + b.ferr;
  const Real round = head.rounding_bound() + 4 * std::numeric_limits<Real>::epsilon() * (abs(r.value) + abs(mid));
  r.err_lo = half + round;
  r.err_hi = half + round;
  r.method = eval_method::direct;
  r.terms_used = N;
  return r;
}

// Alternating series: direct head plus a Boole summation of the tail
//   sum_{k>N} (-1)^{k-1} h(k) = (-1)^N sum_{j>=1} (-1)^{j-1} G(j),  G(x) = h(N + x)
// The remainder bound comes from the engine (variation of G^(n)); the
// boundary terms are recomputed with Real-precision jets.
template <typename Real = double>
eval_result<Real> eval_S_alt(const mathieu_params& p, Real t, Real tol = Real(1e-13), int order = 8) {
  p.validate(series_kind::alternating);
  if (!(t >= 0) || !std::isfinite(double(t))) throw domain_error("t must be nonnegative");
  if (!(tol > 0)) throw domain_error("tolerance must be positive");
  const Real u = Real(p.u);
  const detail::term_fn<Real> h{p, std::pow(t, Real(p.alpha))};
  const long long cap = detail::max_terms();
  const double ga = p.gamma, al = p.alpha, m = p.mu + 1;

  long long N = std::max<long long>(16, (long long)std::ceil(2 * double(t)) + 16);
  if (p.u < 0) N += (long long)std::ceil(-p.u);
  em_result tail;
  for (;;) {
    if (N > cap) throw tolerance_error("direct summation would exceed the term cap (MATHIEU_MAX_TERMS)");
    const double shift = double(N) + p.u, ta = std::pow(double(t), p.alpha);
    smooth_function G([=](auto x) {
      using std::pow;
      auto y = x + shift;
      return 2.0 * pow(y, ga) * pow(pow(y, al) + ta, -m);
    });
    G.with_domain_left(-shift).with_scale(shift + double(t));
    tail = boole_sum(G, 1.0, 0.0, order);
    if (tail.remainder_bound - tail.rounding_bound <= double(tol) / 2) break;
    N *= 4;
  }

  // sum_k (-1)^k E_k(0)/(2 k!) G^(k)(0) with G^(k)(0)/k! from a Real jet
  auto y = jet<Real>::variable(Real(N) + u, order);
  auto gj = Real(2) * pow(y, Real(ga)) * pow(pow(y, Real(al)) + std::pow(t, Real(al)), Real(-m));
  compensated_sum<Real> boole;
  for (int k = order; k >= 0; --k) boole += (k % 2 ? Real(-1) : Real(1)) * euler_poly<Real>(k, 0.0) / 2 * gj.coeff(k);

  compensated_sum<Real> head;
  for (long long k = N; k >= 1; --k) {
    Real yk = Real(k) + u;
    if (yk == 0) continue;
    head += (k % 2 ? Real(1) : Real(-1)) * h(yk);
  }
  const Real tv = (N % 2 ? Real(-1) : Real(1)) * boole.value();
  eval_result<Real> r;
  r.value = head.value() + tv;
  const Real err = Real(tail.remainder_bound - tail.rounding_bound) + boole.rounding_bound(Real(64)) + head.rounding_bound() +
                   4 * std::numeric_limits<Real>::epsilon() * std::abs(r.value);
  r.err_lo = err;
  r.err_hi = err;
  r.method = eval_method::direct;
  r.terms_used = N;
  return r;
}

// ---------------------------------------------------------------------------
// asymptotic expansions in t

namespace detail {

inline void check_asym_regime(const mathieu_params& p) {
  if (!p.smooth_regime()) throw regime_error("asymptotic expansion needs integer gamma >= 0 and natural alpha");
}

// Gamma(mu+k+1) / (Gamma(mu+1) k!)
inline long double rising_ratio(double mu, int k) {
  long double c = 1;
  for (int j = 1; j <= k; ++j) c *= (mu + j) / (long double)j;
  return c;
}

}  // namespace detail

// S ~ (2/alpha) B((gamma+1)/alpha, mu+1-(gamma+1)/alpha) t^{-(delta-1)}
//   + sum_k (-1)^{k(alpha+1)+gamma} 2 Gamma(mu+k+1)/(Gamma(mu+1) k!) B_{k alpha+gamma+1}(-u)/(k alpha+gamma+1) t^{-alpha(k+mu+1)}
// with n stream terms k = 0..n-1
inline asymptotic_series asym_S(const mathieu_params& p, int n) {
  p.validate(series_kind::plain);
  detail::check_asym_regime(p);
  const int ga = int(p.gamma), al = int(p.alpha);
  if (n < 0 || (n - 1) * al + ga + 1 > poly_max_order + 1) throw order_error("too many terms for the cached Bernoulli range");
  asymptotic_series s;
  s.variable = "t";
  const long double a = (p.gamma + 1) / p.alpha;
  s.leading = asymptotic_series::term{-(long double)(p.delta() - 1),
                                      2.0L / al * (long double)boost::math::beta<long double>(a, p.mu + 1 - a)};
  for (int k = 0; k < n; ++k) {
    const int m = k * al + ga + 1;
    const long double sign = ((k * (al + 1) + ga) % 2) ? -1.0L : 1.0L;
    const long double c = sign * 2 * detail::rising_ratio(p.mu, k) * bernoulli_poly<long double>(m, -p.u) / m;
    s.stream.push_back({-(long double)p.alpha * (k + p.mu + 1), c});
  }
  return s;
}

// S~ ~ sum_k (-1)^{k(alpha+1)+gamma} Gamma(mu+k+1)/(Gamma(mu+1) k!) E_{k alpha+gamma}(-u) t^{-alpha(k+mu+1)}
inline asymptotic_series asym_S_alt(const mathieu_params& p, int n) {
  p.validate(series_kind::alternating);
  detail::check_asym_regime(p);
  const int ga = int(p.gamma), al = int(p.alpha);
  if (n < 0 || (n - 1) * al + ga > poly_max_order) throw order_error("too many terms for the cached Euler range");
  asymptotic_series s;
  s.variable = "t";
  for (int k = 0; k < n; ++k) {
    const int m = k * al + ga;
    const long double sign = ((k * (al + 1) + ga) % 2) ? -1.0L : 1.0L;
    s.stream.push_back({-(long double)p.alpha * (k + p.mu + 1), sign * detail::rising_ratio(p.mu, k) * euler_poly<long double>(m, -p.u)});
  }
  return s;
}

// largest stream length the cached polynomial tables allow
inline int asym_max_terms(const mathieu_params& p, series_kind kind) {
  detail::check_asym_regime(p);
  const int ga = int(p.gamma), al = int(p.alpha);
  return kind == series_kind::plain ? (poly_max_order - ga) / al + 1 : (poly_max_order - ga) / al + 1;
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin / Boole evaluation with eps = 1/t: each term is 2 t^-delta g((k+u)/t)

template <typename Real = double>
eval_result<Real> eval_em(const mathieu_params& p, double t, series_kind kind, int n) {
  p.validate(kind);
  if (!(t > 0)) throw domain_error("the summation path needs t > 0");
  if (!p.smooth_regime()) {
    auto prof = g_smoothness(p, 0);
    if (n > prof.r) throw order_error("expansion order exceeds the smoothness of g");
  }
  auto F = g_function(p);
  em_result e = kind == series_kind::plain ? em_sum(F, 1 / t, p.u, n) : boole_sum(F, 1 / t, p.u, n);
  const Real scale = Real(2) * std::pow(Real(t), -Real(p.delta()));
  eval_result<Real> r;
  r.value = scale * Real(e.sum_estimate);
  r.err_lo = r.err_hi = scale * Real(e.remainder_bound) + 4 * std::numeric_limits<Real>::epsilon() * std::abs(r.value);
  r.method = eval_method::euler_maclaurin;
  r.terms_used = n;
  return r;
}

// truncated asymptotic series at t; the bracket is |first omitted term| (heuristic)
template <typename Real = double>
std::optional<eval_result<Real>> eval_asym(const mathieu_params& p, Real t, series_kind kind, Real tol) {
  const int nmax = asym_max_terms(p, kind);
  auto s = kind == series_kind::plain ? asym_S(p, nmax) : asym_S_alt(p, nmax);
  for (int n = 0; n < nmax; ++n) {
    Real next = std::abs(s.next_term(t, n));
    if (next <= tol) {
      eval_result<Real> r;
      r.value = s.evaluate(t, n);
      r.err_lo = r.err_hi = next + 4 * std::numeric_limits<Real>::epsilon() * std::abs(r.value);
      r.method = eval_method::asymptotic;
      r.terms_used = n;
      r.rigorous = false;
      return r;
    }
  }
  return std::nullopt;
}

struct auto_options {
  double direct_max_t = 100;  // direct summation below this t
  int em_max_order = 8;
};

// regime dispatcher: direct for small t; asymptotic series (when available and
// its next term is below tol), then Euler-Maclaurin, for large t
template <typename Real = double>
eval_result<Real> eval_auto(const mathieu_params& p, Real t, Real tol, series_kind kind = series_kind::plain,
                            const auto_options& opt = {}) {
  p.validate(kind);
  auto direct = [&] { return kind == series_kind::plain ? eval_S<Real>(p, t, tol) : eval_S_alt<Real>(p, t, tol); };
  if (!(t > Real(opt.direct_max_t))) return direct();
  if (p.smooth_regime())
    if (auto a = eval_asym<Real>(p, t, kind, tol)) return *a;
  int top = opt.em_max_order;
  if (!p.smooth_regime()) top = std::min(top, g_smoothness(p, 0).r);
  std::optional<eval_result<Real>> best;
  for (int n = 0; n <= top; ++n) {
    try {
      auto e = eval_em<Real>(p, double(t), kind, n);
      if (!best || e.err_hi < best->err_hi) best = e;
    } catch (const precondition_error&) {
      break;
    }
  }
  if (best && best->err_hi <= tol) return *best;
  return direct();
}

template <typename Real = double>
struct cross_check {
  eval_result<Real> first;
  eval_result<Real> second;
  bool overlap = false;
};

// evaluates with two independent methods and reports whether the brackets intersect
template <typename Real = double>
cross_check<Real> cross_validate(const mathieu_params& p, Real t, Real tol, series_kind kind = series_kind::plain) {
  cross_check<Real> c;
  c.first = kind == series_kind::plain ? eval_S<Real>(p, t, tol) : eval_S_alt<Real>(p, t, tol);
  auto_options far;
  far.direct_max_t = 0;
  std::optional<eval_result<Real>> best;
  int top = p.smooth_regime() ? far.em_max_order : std::min(far.em_max_order, g_smoothness(p, 0).r);
  for (int n = 0; n <= top; ++n) {
    auto e = eval_em<Real>(p, double(t), kind, n);
    if (!best || e.err_hi < best->err_hi) best = e;
  }
  c.second = *best;
  c.overlap = c.first.lower() <= c.second.upper() && c.second.lower() <= c.first.upper();
  return c;
}

// ---------------------------------------------------------------------------
// theta-type series phi_u(x) = x sum_{k>=1} 2(k+u) e^{-(k+u)^2 x}

// ln phi_u(x) = ln(2x(1+u)) - (1+u)^2 x + ln sum_k (k+u)/(1+u) e^{-(k-1)(k+1+2u) x},
// stable for large x; the tail beyond the peak is bounded by its integral
template <typename Real = double>
Real log_phi_u(Real u, Real x) {
  if (!(x > 0)) throw domain_error("x must be positive");
  if (!(u >= 0)) throw domain_error("u must be nonnegative");
  const Real y1 = 1 + u;
  compensated_sum<Real> s;
  const Real peak = 1 / std::sqrt(2 * x);
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (long long k = 1;; ++k) {
    const Real y = Real(k) + u;
    const Real e = Real(k - 1) * (Real(k) + 1 + 2 * u) * x;
    s += y / y1 * std::exp(-e);
    if (y >= peak) {
      // sum_{j>k} y_j e^{-(y_j^2 - y1^2) x} <= e^{-(y^2 - y1^2) x} / (2x)
      const Real bound = std::exp(-e) / (2 * x * y1);
      if (bound <= eps * s.value() / 8) break;
    }
    if (k > 100'000'000) throw tolerance_error("phi_u needs too many terms");
  }
  return std::log(2 * x * y1) - y1 * y1 * x + std::log(s.value());
}

template <typename Real = double>
Real phi_u(Real u, Real x) {
  return std::exp(log_phi_u<Real>(u, x));
}

}  // namespace mathieu
